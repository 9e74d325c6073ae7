#include "admnet/odeeq.hpp"

#include <functional>
#include <numeric>

#include "admnet/error.hpp"
#include "admnet/limits.hpp"

namespace admnet {

namespace {

RationalMatrix expand(const RationalMatrix& m, std::span<const int> dims) {
  if (dims.empty()) return m;
  std::vector<int> offset(dims.size() + 1, 0);
  for (std::size_t c = 0; c < dims.size(); ++c) {
    if (dims[c] <= 0) throw ValidationError("cell dimension must be positive");
    offset[c + 1] = offset[c] + dims[c];
  }
  RationalMatrix out(offset.back(), offset.back());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      if (dims[i] != dims[j]) throw ValidationError("coupling between cells of different dimension");
      for (int k = 0; k < dims[i]; ++k) out(offset[i] + k, offset[j] + k) = m(i, j);
    }
  }
  return out;
}

std::vector<Rational> flatten(const RationalMatrix& m) { return m.data(); }

RowSpace span_of(const LinearBasis& b) {
  RowSpace space(b.n * b.n);
  for (const auto& m : b.generators) space.insert(flatten(m));
  return space;
}

}  // namespace

LinearBasis linear_admissible_basis(const Network& g, std::span<const int> dims) {
  const int n = g.num_cells();
  if (!dims.empty() && static_cast<int>(dims.size()) != n) {
    throw ValidationError("dims length does not match the cell count");
  }
  LinearBasis basis;
  basis.n = dims.empty() ? n : std::accumulate(dims.begin(), dims.end(), 0);
  const Partition classes = g.input_classes();
  for (const auto& q : classes.blocks()) {
    RationalMatrix d(n, n);
    for (int c : q) d(c, c) = 1;
    basis.generators.push_back(expand(d, dims));
    for (int t = 0; t < g.num_types(); ++t) {
      const IntMatrix& a = g.adjacency(t);
      RationalMatrix m(n, n);
      bool any = false;
      for (int c : q) {
        for (int j = 0; j < n; ++j) {
          if (a(c, j) != 0) {
            m(c, j) = a(c, j);
            any = true;
          }
        }
      }
      if (any) basis.generators.push_back(expand(m, dims));
    }
  }
  return basis;
}

int span_dimension(const LinearBasis& b) { return span_of(b).rank(); }

bool span_equal(const LinearBasis& a, const LinearBasis& b) {
  if (a.n != b.n) throw ValidationError("bases act on spaces of different dimension");
  RowSpace sa = span_of(a);
  RowSpace sb = span_of(b);
  if (sa.rank() != sb.rank()) return false;
  for (const auto& m : b.generators) {
    if (!sa.contains(flatten(m))) return false;
  }
  return true;
}

std::optional<std::vector<int>> ode_equivalent(const Network& g1, const Network& g2) {
  const int n = g1.num_cells();
  if (n != g2.num_cells()) return std::nullopt;
  if (n > permutation_bound()) {
    throw BoundExceeded("ode_equivalent: " + std::to_string(n) + " cells exceeds the bound of " +
                        std::to_string(permutation_bound()));
  }
  if (g1.is_homogeneous() && g2.is_homogeneous() && g1.is_simple() && g2.is_simple()) {
    auto iso = is_isomorphic(g1, g2);
    if (!iso) return std::nullopt;
    return iso->cell_map;
  }
  const LinearBasis b1 = linear_admissible_basis(g1);
  const LinearBasis b2 = linear_admissible_basis(g2);
  const RowSpace s1 = span_of(b1);
  if (s1.rank() != span_dimension(b2)) return std::nullopt;

  const Partition q1 = g1.input_classes();
  const Partition q2 = g2.input_classes();
  const Partition& c1 = g1.cell_class();
  const Partition& c2 = g2.cell_class();
  std::vector<int> gamma(n, -1);
  std::vector<char> used(n, 0);
  std::vector<int> qmap(q1.num_blocks(), -1), qinv(q2.num_blocks(), -1);
  std::vector<int> cmap(c1.num_blocks(), -1), cinv(c2.num_blocks(), -1);

  auto leaf = [&]() {
    for (const auto& m : b2.generators) {
      RationalMatrix p(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) p(i, j) = m(gamma[i], gamma[j]);
      }
      if (!s1.contains(flatten(p))) return false;
    }
    return true;
  };

  std::function<bool(int)> search = [&](int c) -> bool {
    if (c == n) return leaf();
    const int a = q1.block_of(c), k = c1.block_of(c);
    for (int d = 0; d < n; ++d) {
      if (used[d]) continue;
      const int b = q2.block_of(d), l = c2.block_of(d);
      if (q1.block(a).size() != q2.block(b).size()) continue;
      if (c1.block(k).size() != c2.block(l).size()) continue;
      if ((qmap[a] != -1 && qmap[a] != b) || (qinv[b] != -1 && qinv[b] != a)) continue;
      if ((cmap[k] != -1 && cmap[k] != l) || (cinv[l] != -1 && cinv[l] != k)) continue;
      const bool new_q = qmap[a] == -1, new_c = cmap[k] == -1;
      qmap[a] = b, qinv[b] = a, cmap[k] = l, cinv[l] = k;
      gamma[c] = d;
      used[d] = 1;
      if (search(c + 1)) return true;
      used[d] = 0;
      if (new_q) qmap[a] = -1, qinv[b] = -1;
      if (new_c) cmap[k] = -1, cinv[l] = -1;
    }
    return false;
  };
  if (search(0)) return gamma;
  return std::nullopt;
}

}  // namespace admnet
