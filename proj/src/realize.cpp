#include "admnet/realize.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "admnet/error.hpp"
#include "admnet/limits.hpp"
#include "admnet/odeeq.hpp"
#include "admnet/synchrony.hpp"

namespace admnet {

namespace {

constexpr std::uint64_t kStep3Cap = 100000;
constexpr std::size_t kStep4Cap = 20000;

std::string cell_name(int c) { return "cell " + std::to_string(c + 1); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<int>> groups_of(UnionFind& uf, int n) {
  std::map<int, std::vector<int>> by_root;
  for (int i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

// Local-variable permutation moving slot i onto slot slot_map[i] of the
// target layout (own variables fixed).
std::vector<int> slot_permutation(const CellGenerator& from, const CellGenerator& to,
                                  const std::vector<int>& slot_map) {
  std::vector<int> sigma(from.nvars());
  for (int k = 0; k < from.own_dim; ++k) sigma[k] = k;
  for (int s = 0; s < static_cast<int>(from.slots.size()); ++s) {
    const int a = from.offset(s), b = to.offset(slot_map[s]);
    for (int k = 0; k < from.slots[s].dim; ++k) sigma[a + k] = b + k;
  }
  return sigma;
}

// f_from with its slots renamed through slot_map equals f_to.
bool matches(const CellGenerator& from, const CellGenerator& to, const std::vector<int>& slot_map) {
  if (from.nvars() != to.nvars() || from.own_dim != to.own_dim ||
      from.slots.size() != to.slots.size()) {
    return false;
  }
  for (int s = 0; s < static_cast<int>(from.slots.size()); ++s) {
    if (from.slots[s].dim != to.slots[slot_map[s]].dim) return false;
  }
  const auto sigma = slot_permutation(from, to, slot_map);
  for (int k = 0; k < from.own_dim; ++k) {
    if (apply_permutation(from.components[k], sigma) != to.components[k]) return false;
  }
  return true;
}

bool invariant_under(const CellGenerator& g, const std::vector<int>& slot_map) {
  return matches(g, g, slot_map);
}

std::vector<int> swap_slots(int nslots, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> m(nslots);
  std::iota(m.begin(), m.end(), 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    m[a[k]] = b[k];
    m[b[k]] = a[k];
  }
  return m;
}

CellGenerator simple_generator(const VectorFieldSpec& f, int c, const std::vector<int>& tails) {
  CellGenerator g;
  g.own_dim = f.cell_dim(c);
  for (int d : tails) g.slots.push_back({d, f.cell_dim(d)});
  const int nloc = g.nvars();
  std::map<int, Polynomial> rename;
  for (int k = 0; k < g.own_dim; ++k) {
    rename.emplace(f.cells[c][k], Polynomial::variable(nloc, k));
    g.names.push_back(f.var_names[f.cells[c][k]]);
  }
  for (int s = 0; s < static_cast<int>(tails.size()); ++s) {
    const int d = tails[s];
    for (int k = 0; k < f.cell_dim(d); ++k) {
      rename.emplace(f.cells[d][k], Polynomial::variable(nloc, g.offset(s) + k));
      g.names.push_back(f.var_names[f.cells[d][k]]);
    }
  }
  for (int i : f.cells[c]) g.components.push_back(substitute(f.components[i], rename));
  return g;
}

// Cells whose components depend on some coordinate of cell d, d != c.
std::vector<int> coupled_tails(const VectorFieldSpec& f, int c) {
  std::vector<int> tails;
  for (int d = 0; d < f.num_cells(); ++d) {
    if (d == c) continue;
    bool dep = false;
    for (int i : f.cells[c]) {
      for (int j : f.cells[d]) dep = dep || depends_on(f.components[i], j);
    }
    if (dep) tails.push_back(d);
  }
  return tails;
}

void check_generator(const VectorFieldSpec& f, int c, const CellGenerator& g) {
  const std::string who = cell_name(c);
  if (g.own_dim != f.cell_dim(c)) {
    throw ValidationError(who + ": generator has " + std::to_string(g.own_dim) +
                          " own variables, cell has dimension " + std::to_string(f.cell_dim(c)));
  }
  if (static_cast<int>(g.components.size()) != g.own_dim) {
    throw ValidationError(who + ": generator needs one component per own variable");
  }
  for (const auto& s : g.slots) {
    if (s.tail < 0 || s.tail >= f.num_cells()) throw ValidationError(who + ": input tail out of range");
    if (s.dim != f.cell_dim(s.tail)) {
      throw ValidationError(who + ": input block size does not match the dimension of " +
                            cell_name(s.tail));
    }
  }
  for (const auto& p : g.components) {
    if (p.nvars() != g.nvars()) throw ValidationError(who + ": generator variable count mismatch");
  }
  for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
    bool dep = false;
    for (const auto& p : g.components) {
      for (int k = 0; k < g.slots[s].dim; ++k) dep = dep || depends_on(p, g.offset(s) + k);
    }
    if (!dep) {
      throw ValidationError(who + ": generator ignores input " + std::to_string(s + 1) +
                            " (spurious dependency)");
    }
  }
  const int n = f.dimension();
  std::map<int, Polynomial> to_global;
  for (int k = 0; k < g.own_dim; ++k) to_global.emplace(k, Polynomial::variable(n, f.cells[c][k]));
  for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
    for (int k = 0; k < g.slots[s].dim; ++k) {
      to_global.emplace(g.offset(s) + k, Polynomial::variable(n, f.cells[g.slots[s].tail][k]));
    }
  }
  for (int k = 0; k < g.own_dim; ++k) {
    if (substitute(g.components[k], to_global) != f.components[f.cells[c][k]]) {
      throw ValidationError(who + ": generating function does not reproduce the vector field");
    }
  }
}

// Cells without inputs in one class but with different dynamics would be
// input equivalent with no edge type to tell them apart; give them classes
// of their own.
Partition split_empty_cells(const Partition& classes, const std::vector<CellGenerator>& gens) {
  std::vector<int> labels(classes.labels().begin(), classes.labels().end());
  int next = classes.num_blocks();
  for (const auto& b : classes.blocks()) {
    std::vector<int> reps;
    for (int c : b) {
      if (!gens[c].slots.empty()) continue;
      auto it = std::find_if(reps.begin(), reps.end(),
                             [&](int r) { return gens[r].components == gens[c].components; });
      if (it == reps.end()) {
        if (!reps.empty()) labels[c] = next++;
        reps.push_back(c);
      } else {
        labels[c] = labels[*it];
      }
    }
  }
  return Partition::from_labels(labels);
}

Network network_from_slots(const RealizationInput& in,
                           const std::function<int(int, int)>& type_of_slot) {
  std::vector<Edge> edges;
  for (int c = 0; c < static_cast<int>(in.generators.size()); ++c) {
    for (int s = 0; s < static_cast<int>(in.generators[c].slots.size()); ++s) {
      edges.push_back({in.generators[c].slots[s].tail, c, type_of_slot(c, s)});
    }
  }
  return Network::build(static_cast<int>(in.generators.size()), in.cell_class, std::move(edges));
}

int block_tail_class(const RealizationInput& in, int c, const std::vector<int>& block) {
  return in.cell_class.block_of(in.generators[c].slots[block.front()].tail);
}

// Slot map of cell d onto the reference layout for block matching beta.
std::vector<int> block_slot_map(const CellInterchange& d, const CellInterchange& ref,
                                const std::vector<int>& beta, int nslots) {
  std::vector<int> m(nslots);
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const auto& src = d.blocks[j];
    const auto& dst = ref.blocks[beta[j]];
    for (std::size_t k = 0; k < src.size(); ++k) m[src[k]] = dst[k];
  }
  return m;
}

std::optional<std::vector<int>> find_matching(const RealizationInput& in,
                                              const InterchangeStructure& s, int d, int r) {
  const auto& bd = s.cells[d];
  const auto& br = s.cells[r];
  const int nb = static_cast<int>(bd.blocks.size());
  if (nb != static_cast<int>(br.blocks.size())) return std::nullopt;
  if (in.generators[d].nvars() != in.generators[r].nvars()) return std::nullopt;
  const int nslots = static_cast<int>(in.generators[d].slots.size());
  std::vector<int> beta(nb, -1);
  std::vector<char> used(nb, 0);
  std::function<bool(int)> search = [&](int j) -> bool {
    if (j == nb) {
      return matches(in.generators[d], in.generators[r], block_slot_map(bd, br, beta, nslots));
    }
    for (int b = 0; b < nb; ++b) {
      if (used[b] || bd.blocks[j].size() != br.blocks[b].size()) continue;
      if (block_tail_class(in, d, bd.blocks[j]) != block_tail_class(in, r, br.blocks[b])) continue;
      used[b] = 1;
      beta[j] = b;
      if (search(j + 1)) return true;
      used[b] = 0;
    }
    return false;
  };
  if (search(0)) return beta;
  return std::nullopt;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
    throw BoundExceeded("theta overflows 64 bits");
  }
  return a * b;
}

// Every permutation of the reference blocks that permutes blocks within
// their collections, in lexicographic odometer order.
std::vector<std::vector<int>> collection_permutations(const CellInterchange& ref) {
  const int nb = static_cast<int>(ref.blocks.size());
  std::vector<std::vector<std::vector<int>>> per;
  for (const auto& coll : ref.collections) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(coll.size());
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    per.push_back(std::move(perms));
  }
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    std::vector<int> pi(nb);
    std::iota(pi.begin(), pi.end(), 0);
    for (std::size_t t = 0; t < per.size(); ++t) {
      const auto& coll = ref.collections[t];
      const auto& p = per[t][idx[t]];
      for (std::size_t i = 0; i < coll.size(); ++i) pi[coll[i]] = coll[p[i]];
    }
    out.push_back(std::move(pi));
    int t = static_cast<int>(per.size()) - 1;
    while (t >= 0 && ++idx[t] == per[t].size()) idx[t--] = 0;
    if (t < 0) break;
  }
  return out;
}

Network bar_from_classes(const RealizationInput& in, const InterchangeStructure& s,
                         const InputClasses& q) {
  std::vector<int> offset(q.reference.size() + 1, 0);
  for (std::size_t k = 0; k < q.reference.size(); ++k) {
    offset[k + 1] = offset[k] + static_cast<int>(s.cells[q.reference[k]].collections.size());
  }
  std::vector<std::vector<int>> block_of(in.generators.size());
  for (std::size_t c = 0; c < in.generators.size(); ++c) {
    block_of[c].assign(in.generators[c].slots.size(), 0);
    for (std::size_t j = 0; j < s.cells[c].blocks.size(); ++j) {
      for (int slot : s.cells[c].blocks[j]) block_of[c][slot] = static_cast<int>(j);
    }
  }
  return network_from_slots(in, [&](int c, int slot) {
    const int k = q.classes.block_of(c);
    const int ref_block = q.matching[c][block_of[c][slot]];
    return offset[k] + s.cells[q.reference[k]].collection_of[ref_block];
  });
}

}  // namespace

int CellGenerator::nvars() const {
  int n = own_dim;
  for (const auto& s : slots) n += s.dim;
  return n;
}

int CellGenerator::offset(int slot) const {
  int n = own_dim;
  for (int s = 0; s < slot; ++s) n += slots[s].dim;
  return n;
}

RealizationInput prepare_realization(const VectorFieldSpec& f,
                                     const std::optional<GeneratingAssignment>& a) {
  RealizationInput in{f, {}, f.cell_class, Network()};
  const int m = f.num_cells();
  if (a) {
    if (static_cast<int>(a->cells.size()) != m) {
      throw ValidationError("assignment has " + std::to_string(a->cells.size()) +
                            " cells, field has " + std::to_string(m));
    }
    for (int c = 0; c < m; ++c) check_generator(f, c, a->cells[c]);
    in.generators = a->cells;
  } else {
    for (int c = 0; c < m; ++c) in.generators.push_back(simple_generator(f, c, coupled_tails(f, c)));
  }
  in.cell_class = split_empty_cells(f.cell_class, in.generators);
  int next = 0;
  in.g1 = network_from_slots(in, [&](int, int) { return next++; });
  return in;
}

Network step1_simple(const VectorFieldSpec& f) { return prepare_realization(f).g1; }

Network validate_generating_assignment(const VectorFieldSpec& f, const GeneratingAssignment& a) {
  return prepare_realization(f, a).g1;
}

InterchangeStructure step2_interchange_blocks(const RealizationInput& in) {
  InterchangeStructure s;
  for (int c = 0; c < static_cast<int>(in.generators.size()); ++c) {
    const CellGenerator& g = in.generators[c];
    const int ns = static_cast<int>(g.slots.size());
    UnionFind slots(ns);
    for (int a = 0; a < ns; ++a) {
      for (int b = a + 1; b < ns; ++b) {
        if (slots.find(a) == slots.find(b)) continue;
        if (!in.cell_class.same_block(g.slots[a].tail, g.slots[b].tail)) continue;
        if (g.slots[a].dim != g.slots[b].dim) continue;
        if (invariant_under(g, swap_slots(ns, {a}, {b}))) slots.unite(a, b);
      }
    }
    CellInterchange ci;
    ci.blocks = groups_of(slots, ns);
    const int nb = static_cast<int>(ci.blocks.size());
    UnionFind blocks(nb);
    for (int u = 0; u < nb; ++u) {
      for (int v = u + 1; v < nb; ++v) {
        if (blocks.find(u) == blocks.find(v)) continue;
        const auto& bu = ci.blocks[u];
        const auto& bv = ci.blocks[v];
        if (bu.size() != bv.size()) continue;
        if (!in.cell_class.same_block(g.slots[bu.front()].tail, g.slots[bv.front()].tail)) continue;
        if (invariant_under(g, swap_slots(ns, bu, bv))) blocks.unite(u, v);
      }
    }
    ci.collections = groups_of(blocks, nb);
    ci.collection_of.assign(nb, 0);
    for (int t = 0; t < static_cast<int>(ci.collections.size()); ++t) {
      for (int b : ci.collections[t]) ci.collection_of[b] = t;
    }
    s.cells.push_back(std::move(ci));
  }
  return s;
}

InputClasses step3_input_classes(const RealizationInput& in, const InterchangeStructure& s) {
  const int m = static_cast<int>(in.generators.size());
  InputClasses q;
  std::vector<int> labels(m, -1);
  q.matching.resize(m);
  for (int c = 0; c < m; ++c) {
    for (int k = 0; k < static_cast<int>(q.reference.size()) && labels[c] == -1; ++k) {
      const int r = q.reference[k];
      if (!in.cell_class.same_block(c, r)) continue;
      if (auto beta = find_matching(in, s, c, r)) {
        labels[c] = k;
        q.matching[c] = std::move(*beta);
      }
    }
    if (labels[c] == -1) {
      labels[c] = static_cast<int>(q.reference.size());
      q.reference.push_back(c);
      q.matching[c].resize(s.cells[c].blocks.size());
      std::iota(q.matching[c].begin(), q.matching[c].end(), 0);
    }
  }
  q.classes = Partition::from_labels(labels);
  q.type_offset.assign(q.reference.size() + 1, 0);
  for (std::size_t k = 0; k < q.reference.size(); ++k) {
    q.type_offset[k + 1] = q.type_offset[k] + static_cast<int>(s.cells[q.reference[k]].blocks.size());
  }
  return q;
}

std::uint64_t theta(const RealizationInput&, const InterchangeStructure& s, const InputClasses& q) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < q.reference.size(); ++k) {
    const auto members = q.classes.block(q.classes.block_of(q.reference[k])).size();
    for (const auto& coll : s.cells[q.reference[k]].collections) {
      std::uint64_t fact = 1;
      for (std::uint64_t i = 2; i <= coll.size(); ++i) fact *= i;
      for (std::size_t e = 1; e < members; ++e) total = checked_mul(total, fact);
    }
  }
  return total;
}

std::uint64_t theta(const VectorFieldSpec& f) {
  auto in = prepare_realization(f);
  auto s = step2_interchange_blocks(in);
  return theta(in, s, step3_input_classes(in, s));
}

std::vector<Network> step3_enumerate(const RealizationInput& in, const InterchangeStructure& s,
                                     const InputClasses& q) {
  const std::uint64_t count = theta(in, s, q);
  if (count > kStep3Cap) {
    throw BoundExceeded("step 3 would emit " + std::to_string(count) + " networks (cap " +
                        std::to_string(kStep3Cap) + ")");
  }
  const int m = static_cast<int>(in.generators.size());
  std::vector<int> members;
  std::vector<std::vector<std::vector<int>>> options;
  for (int c = 0; c < m; ++c) {
    const int k = q.classes.block_of(c);
    if (q.reference[k] == c) continue;
    std::vector<std::vector<int>> opts;
    for (const auto& pi : collection_permutations(s.cells[q.reference[k]])) {
      std::vector<int> beta(q.matching[c].size());
      for (std::size_t j = 0; j < beta.size(); ++j) beta[j] = pi[q.matching[c][j]];
      opts.push_back(std::move(beta));
    }
    members.push_back(c);
    options.push_back(std::move(opts));
  }
  std::vector<std::vector<int>> block_of(m);
  for (int c = 0; c < m; ++c) {
    block_of[c].assign(in.generators[c].slots.size(), 0);
    for (std::size_t j = 0; j < s.cells[c].blocks.size(); ++j) {
      for (int slot : s.cells[c].blocks[j]) block_of[c][slot] = static_cast<int>(j);
    }
  }
  std::vector<Network> out;
  std::vector<std::size_t> idx(members.size(), 0);
  std::vector<const std::vector<int>*> beta_of(m, nullptr);
  for (int c = 0; c < m; ++c) beta_of[c] = &q.matching[c];
  while (true) {
    for (std::size_t i = 0; i < members.size(); ++i) beta_of[members[i]] = &options[i][idx[i]];
    out.push_back(network_from_slots(in, [&](int c, int slot) {
      return q.type_offset[q.classes.block_of(c)] + (*beta_of[c])[block_of[c][slot]];
    }));
    int i = static_cast<int>(members.size()) - 1;
    while (i >= 0 && ++idx[i] == options[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::vector<Network> step3_enumerate(const VectorFieldSpec& f) {
  auto in = prepare_realization(f);
  auto s = step2_interchange_blocks(in);
  return step3_enumerate(in, s, step3_input_classes(in, s));
}

std::vector<Step4Variant> step4_variants(const Network& g3) {
  const int k = g3.num_types();
  const int n = g3.num_cells();
  const Partition& cc = g3.cell_class();
  std::vector<int> head_class(k), tail_class(k);
  std::vector<std::vector<char>> in_cell(n, std::vector<char>(k, 0));
  for (const auto& e : g3.edges()) {
    head_class[e.type] = cc.block_of(e.head);
    tail_class[e.type] = cc.block_of(e.tail);
    in_cell[e.head][e.type] = 1;
  }
  std::vector<std::vector<char>> legal(k, std::vector<char>(k, 0));
  for (int t = 0; t < k; ++t) {
    for (int u = 0; u < k; ++u) {
      bool co = false;
      for (int c = 0; c < n && !co; ++c) co = in_cell[c][t] && in_cell[c][u];
      legal[t][u] = t != u && !co && head_class[t] == head_class[u] && tail_class[t] == tail_class[u];
    }
  }
  const Partition classes = g3.input_classes();

  std::vector<std::vector<int>> valid;
  std::vector<int> labels(k, 0);
  std::vector<std::vector<int>> groups;
  std::function<void(int)> search = [&](int t) {
    if (t == k) {
      if (g3.with_types(labels).input_classes() == classes) {
        valid.push_back(labels);
        if (valid.size() > kStep4Cap) {
          throw BoundExceeded("step 4 has more than " + std::to_string(kStep4Cap) + " variants");
        }
      }
      return;
    }
    for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
      bool ok = true;
      for (int u : groups[gi]) ok = ok && legal[t][u];
      if (!ok) continue;
      groups[gi].push_back(t);
      labels[t] = gi;
      search(t + 1);
      groups[gi].pop_back();
    }
    groups.push_back({t});
    labels[t] = static_cast<int>(groups.size()) - 1;
    search(t + 1);
    groups.pop_back();
  };
  search(0);

  std::sort(valid.begin(), valid.end(), [](const auto& a, const auto& b) {
    const int ga = a.empty() ? 0 : *std::max_element(a.begin(), a.end());
    const int gb = b.empty() ? 0 : *std::max_element(b.begin(), b.end());
    if (ga != gb) return ga > gb;
    return a < b;
  });
  std::set<std::vector<int>> known(valid.begin(), valid.end());
  auto normalize = [](std::vector<int> v) {
    std::map<int, int> rename;
    for (int& x : v) x = rename.emplace(x, static_cast<int>(rename.size())).first->second;
    return v;
  };
  std::vector<Step4Variant> out;
  for (const auto& v : valid) {
    const int ng = v.empty() ? 0 : *std::max_element(v.begin(), v.end()) + 1;
    bool maximal = true;
    for (int a = 0; a < ng && maximal; ++a) {
      for (int b = a + 1; b < ng && maximal; ++b) {
        auto merged = v;
        for (int& x : merged) {
          if (x == b) x = a;
        }
        if (known.count(normalize(merged))) maximal = false;
      }
    }
    out.push_back({g3.with_types(v), maximal});
  }
  return out;
}

Network bar_graph(const Network& g3, const InterchangeStructure& s, const InputClasses& q) {
  const int nq = static_cast<int>(q.reference.size());
  if (g3.num_types() != q.type_offset[nq]) {
    throw ValidationError("network does not carry the step-3 type numbering");
  }
  std::vector<int> bar_offset(nq + 1, 0);
  for (int k = 0; k < nq; ++k) {
    bar_offset[k + 1] = bar_offset[k] + static_cast<int>(s.cells[q.reference[k]].collections.size());
  }
  std::vector<int> type_map(g3.num_types());
  for (int k = 0; k < nq; ++k) {
    const auto& ref = s.cells[q.reference[k]];
    for (int i = 0; i < static_cast<int>(ref.blocks.size()); ++i) {
      type_map[q.type_offset[k] + i] = bar_offset[k] + ref.collection_of[i];
    }
  }
  return g3.with_types(type_map);
}

Network bar_graph(const VectorFieldSpec& f) {
  auto in = prepare_realization(f);
  auto s = step2_interchange_blocks(in);
  return bar_from_classes(in, s, step3_input_classes(in, s));
}

bool verify_admissible(const Network& g, const VectorFieldSpec& f,
                       const std::optional<GeneratingAssignment>& a) {
  const int m = f.num_cells();
  if (g.num_cells() != m) {
    throw ValidationError("network has " + std::to_string(g.num_cells()) + " cells, field has " +
                          std::to_string(m));
  }
  for (const auto& b : g.cell_class().blocks()) {
    for (int c : b) {
      if (f.cell_dim(c) != f.cell_dim(b.front())) return false;
    }
  }
  // In-edges per head, in edge-list order.
  std::vector<std::vector<int>> in_edges(m);
  for (int i = 0; i < static_cast<int>(g.edges().size()); ++i) in_edges[g.edges()[i].head].push_back(i);

  std::vector<CellGenerator> gens(m);
  std::vector<std::vector<int>> slot_type(m);
  for (int c = 0; c < m; ++c) {
    if (a) {
      if (static_cast<int>(a->cells.size()) != m) return false;
      try {
        check_generator(f, c, a->cells[c]);
      } catch (const ValidationError&) {
        return false;
      }
      gens[c] = a->cells[c];
      std::map<int, std::vector<int>> edges_from;
      for (int e : in_edges[c]) edges_from[g.edges()[e].tail].push_back(e);
      std::map<int, std::size_t> used;
      for (const auto& s : gens[c].slots) {
        auto& list = edges_from[s.tail];
        std::size_t& u = used[s.tail];
        if (u >= list.size()) return false;
        slot_type[c].push_back(g.edges()[list[u++]].type);
      }
      for (auto& [tail, list] : edges_from) {
        if (used[tail] != list.size()) return false;
      }
    } else {
      std::vector<int> tails;
      for (int e : in_edges[c]) {
        const int d = g.edges()[e].tail;
        if (d == c || std::find(tails.begin(), tails.end(), d) != tails.end()) {
          throw ValidationError("network has loops or parallel edges; a generating assignment is required");
        }
        tails.push_back(d);
        slot_type[c].push_back(g.edges()[e].type);
      }
      for (int i : f.cells[c]) {
        for (int d = 0; d < m; ++d) {
          if (d == c || std::find(tails.begin(), tails.end(), d) != tails.end()) continue;
          for (int j : f.cells[d]) {
            if (depends_on(f.components[i], j)) return false;
          }
        }
      }
      gens[c] = simple_generator(f, c, tails);
    }
  }
  // Slots grouped by type, in order.
  auto by_type = [&](int c) {
    std::map<int, std::vector<int>> out;
    for (int s = 0; s < static_cast<int>(slot_type[c].size()); ++s) out[slot_type[c][s]].push_back(s);
    return out;
  };
  for (int c = 0; c < m; ++c) {
    const int ns = static_cast<int>(gens[c].slots.size());
    for (const auto& [t, slots] : by_type(c)) {
      for (std::size_t k = 0; k + 1 < slots.size(); ++k) {
        if (gens[c].slots[slots[k]].dim != gens[c].slots[slots[k + 1]].dim) return false;
        if (!invariant_under(gens[c], swap_slots(ns, {slots[k]}, {slots[k + 1]}))) return false;
      }
    }
  }
  const Partition iclasses = g.input_classes();
  for (const auto& q : iclasses.blocks()) {
    const int r = q.front();
    const auto ref_slots = by_type(r);
    for (std::size_t i = 1; i < q.size(); ++i) {
      const int d = q[i];
      std::vector<int> slot_map(gens[d].slots.size());
      for (const auto& [t, slots] : by_type(d)) {
        const auto& target = ref_slots.at(t);
        for (std::size_t k = 0; k < slots.size(); ++k) slot_map[slots[k]] = target[k];
      }
      if (!matches(gens[d], gens[r], slot_map)) return false;
    }
  }
  return true;
}

bool commutes_with(const VectorFieldSpec& f, const std::vector<int>& cell_map) {
  const int m = f.num_cells();
  if (static_cast<int>(cell_map.size()) != m || !is_permutation(cell_map, m)) return false;
  std::vector<int> pi(f.dimension());
  for (int c = 0; c < m; ++c) {
    if (f.cell_dim(c) != f.cell_dim(cell_map[c])) return false;
    for (int k = 0; k < f.cell_dim(c); ++k) pi[f.cells[c][k]] = f.cells[cell_map[c]][k];
  }
  const auto inv = inverse(pi);
  for (int i = 0; i < f.dimension(); ++i) {
    if (apply_permutation(f.components[pi[i]], inv) != f.components[i]) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> commuting_automorphisms(const Network& bar, const VectorFieldSpec& f) {
  std::vector<std::vector<int>> out;
  for (auto& gamma : automorphism_cell_maps(bar)) {
    if (commutes_with(f, gamma)) out.push_back(std::move(gamma));
  }
  return out;
}

std::uint64_t sigma_from(const Network& g, const std::vector<std::vector<int>>& commuting) {
  std::uint64_t shared = 0;
  for (const auto& gamma : commuting) {
    if (is_automorphism(g, gamma)) ++shared;
  }
  if (shared == 0) throw Error("identity missing from the automorphism count");
  return commuting.size() / shared;
}

}  // namespace

std::uint64_t sigma_size(const Network& g, const VectorFieldSpec& f,
                         const std::optional<GeneratingAssignment>& a) {
  if (!verify_admissible(g, f, a)) throw ValidationError("network is not admissible for the field");
  auto in = prepare_realization(f, a);
  auto s = step2_interchange_blocks(in);
  const Network bar = bar_from_classes(in, s, step3_input_classes(in, s));
  return sigma_from(g, commuting_automorphisms(bar, f));
}

RealizationReport realize_all(const VectorFieldSpec& f, const std::optional<GeneratingAssignment>& a) {
  auto in = prepare_realization(f, a);
  auto s = step2_interchange_blocks(in);
  auto q = step3_input_classes(in, s);
  RealizationReport report;
  report.theta = theta(in, s, q);
  report.bar_graph = bar_from_classes(in, s, q);
  const auto g3s = step3_enumerate(in, s, q);
  report.step3_count = static_cast<int>(g3s.size());

  std::map<std::string, int> index_of;
  for (const auto& g : g3s) {
    auto key = canonical_key(g);
    auto [it, fresh] = index_of.emplace(key, static_cast<int>(report.iso_classes.size()));
    if (fresh) {
      IsoClassReport r;
      r.network = g;
      r.step3 = true;
      report.iso_classes.push_back(std::move(r));
    }
    ++report.iso_classes[it->second].multiplicity;
  }
  report.step3_classes = static_cast<int>(report.iso_classes.size());
  for (int i = 0; i < report.step3_classes; ++i) {
    const Network g3 = report.iso_classes[i].network;
    for (auto& v : step4_variants(g3)) {
      if (!v.optimized) continue;
      auto [it, fresh] = index_of.emplace(canonical_key(v.network), static_cast<int>(report.iso_classes.size()));
      if (fresh) {
        IsoClassReport r;
        r.network = std::move(v.network);
        report.iso_classes.push_back(std::move(r));
      }
      report.iso_classes[it->second].optimized = true;
    }
  }

  const auto commuting = commuting_automorphisms(report.bar_graph, f);
  for (auto& r : report.iso_classes) {
    if (!verify_admissible(r.network, f, a)) {
      throw Error("realized network fails the admissibility check");
    }
    r.sigma = sigma_from(r.network, commuting);
    r.synchrony_count = enumerate_balanced(r.network).nontrivial_count();
  }

  const int nc = static_cast<int>(report.iso_classes.size());
  UnionFind ode(nc);
  for (int i = 0; i < nc; ++i) {
    for (int j = i + 1; j < nc; ++j) {
      if (ode.find(i) == ode.find(j)) continue;
      if (ode_equivalent(report.iso_classes[i].network, report.iso_classes[j].network)) ode.unite(i, j);
    }
  }
  report.ode_classes = groups_of(ode, nc);
  return report;
}

}  // namespace admnet
