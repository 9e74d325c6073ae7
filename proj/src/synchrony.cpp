#include "admnet/synchrony.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "admnet/error.hpp"
#include "admnet/limits.hpp"

namespace admnet {

int SynchronyLattice::nontrivial_count() const {
  int count = 0;
  for (const auto& p : patterns) {
    if (!p.is_bottom() && !p.is_top()) ++count;
  }
  return count;
}

RationalMatrix polydiagonal_basis(const Partition& p, std::span<const int> dims) {
  const int n = p.size();
  if (!dims.empty() && static_cast<int>(dims.size()) != n) {
    throw ValidationError("dims length does not match the partition");
  }
  std::vector<int> offset(n + 1, 0);
  for (int c = 0; c < n; ++c) offset[c + 1] = offset[c] + (dims.empty() ? 1 : dims[c]);
  int cols = 0;
  for (const auto& b : p.blocks()) {
    const int d = dims.empty() ? 1 : dims[b.front()];
    for (int c : b) {
      if ((dims.empty() ? 1 : dims[c]) != d) {
        throw ValidationError("block joins cells of different dimension");
      }
    }
    cols += d;
  }
  RationalMatrix m(offset[n], cols);
  int col = 0;
  for (const auto& b : p.blocks()) {
    const int d = dims.empty() ? 1 : dims[b.front()];
    for (int k = 0; k < d; ++k, ++col) {
      for (int c : b) m(offset[c] + k, col) = 1;
    }
  }
  return m;
}

bool is_balanced(const Network& g, const Partition& p) {
  if (p.size() != g.num_cells()) return false;
  return is_equitable(g, p);
}

SynchronyLattice enumerate_balanced(const Network& g) {
  const int n = g.num_cells();
  if (n > partition_bound()) {
    throw BoundExceeded("enumerate_balanced: " + std::to_string(n) +
                        " cells exceeds the bound of " + std::to_string(partition_bound()));
  }
  SynchronyLattice lattice;
  for_each_partition(g.cell_class(), [&](std::span<const int> labels) {
    Partition p = Partition::from_labels(labels);
    if (is_balanced(g, p)) lattice.patterns.push_back(std::move(p));
  });
  std::sort(lattice.patterns.begin(), lattice.patterns.end(),
            [](const Partition& a, const Partition& b) {
              if (a.num_blocks() != b.num_blocks()) return a.num_blocks() > b.num_blocks();
              return a < b;
            });
  const int m = static_cast<int>(lattice.patterns.size());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && lattice.patterns[i].refines(lattice.patterns[j])) lattice.order.emplace_back(i, j);
    }
    if (classify_chimera(lattice.patterns[i])) lattice.chimera.push_back(i);
  }
  return lattice;
}

bool is_automorphism(const Network& g, std::span<const int> cell_map) {
  const int n = g.num_cells();
  if (static_cast<int>(cell_map.size()) != n || !is_permutation(cell_map, n)) return false;
  // Cell classes must map onto cell classes.
  const Partition& cc = g.cell_class();
  for (const auto& b : cc.blocks()) {
    const int target = cc.block_of(cell_map[b.front()]);
    if (static_cast<int>(cc.block(target).size()) != static_cast<int>(b.size())) return false;
    for (int c : b) {
      if (cc.block_of(cell_map[c]) != target) return false;
    }
  }
  std::vector<char> taken(g.num_types(), 0);
  for (int t = 0; t < g.num_types(); ++t) {
    IntMatrix moved(n, n);
    const IntMatrix& a = g.adjacency(t);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) moved(cell_map[i], cell_map[j]) = a(i, j);
    }
    bool found = false;
    for (int u = 0; u < g.num_types() && !found; ++u) {
      if (!taken[u] && g.adjacency(u) == moved) {
        taken[u] = 1;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

Partition orbit_partition(const Network& g, const std::vector<std::vector<int>>& generators) {
  const int n = g.num_cells();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& gen : generators) {
    if (!is_automorphism(g, gen)) throw ValidationError("generator is not an automorphism");
    for (int c = 0; c < n; ++c) {
      int a = find(c), b = find(gen[c]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> labels(n);
  for (int c = 0; c < n; ++c) labels[c] = find(c);
  Partition p = Partition::from_labels(labels);
  if (!is_balanced(g, p)) throw Error("orbit partition is not balanced");
  return p;
}

bool classify_chimera(const Partition& p) {
  if (p.is_bottom()) return false;
  bool group = false, single = false;
  for (const auto& b : p.blocks()) {
    (b.size() >= 2 ? group : single) = true;
  }
  return group && single;
}

std::string lattice_dot(const SynchronyLattice& lattice) {
  const int m = static_cast<int>(lattice.patterns.size());
  std::vector<std::vector<char>> below(m, std::vector<char>(m, 0));
  for (auto [i, j] : lattice.order) below[i][j] = 1;
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int i = 0; i < m; ++i) {
    out << "  p" << i << " [label=\"" << lattice.patterns[i].to_string() << "\"";
    if (std::find(lattice.chimera.begin(), lattice.chimera.end(), i) != lattice.chimera.end()) {
      out << ", style=filled, fillcolor=lightgrey";
    }
    out << "];\n";
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!below[i][j]) continue;
      bool cover = true;
      for (int k = 0; k < m && cover; ++k) cover = !(below[i][k] && below[k][j]);
      if (cover) out << "  p" << i << " -> p" << j << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace admnet
