#include "admnet/network.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "admnet/error.hpp"
#include "admnet/limits.hpp"

namespace admnet {

int InputSignature::valency() const {
  int total = 0;
  for (const auto& [t, c] : type_counts) total += c;
  return total;
}

Network Network::build(int n_cells, Partition cell_class, std::vector<Edge> edges) {
  if (n_cells <= 0) throw ValidationError("a network needs at least one cell");
  if (cell_class.size() != n_cells) {
    throw ValidationError("cell-class partition does not cover the cells");
  }
  int k = 0;
  for (const auto& e : edges) {
    if (e.tail < 0 || e.tail >= n_cells || e.head < 0 || e.head >= n_cells) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.type < 0) throw ValidationError("negative edge type");
    k = std::max(k, e.type + 1);
  }
  std::vector<int> first(k, -1);
  for (int idx = 0; idx < static_cast<int>(edges.size()); ++idx) {
    const auto& e = edges[idx];
    if (first[e.type] == -1) {
      first[e.type] = idx;
      continue;
    }
    const auto& f = edges[first[e.type]];
    if (!cell_class.same_block(f.head, e.head) || !cell_class.same_block(f.tail, e.tail)) {
      std::ostringstream msg;
      msg << "compatibility violation: edges " << f.tail + 1 << "->" << f.head + 1 << " and "
          << e.tail + 1 << "->" << e.head + 1 << " share type " << e.type
          << " but their heads or tails lie in different cell classes";
      throw ValidationError(msg.str());
    }
  }
  for (int t = 0; t < k; ++t) {
    if (first[t] == -1) throw ValidationError("edge type " + std::to_string(t) + " is empty");
  }
  Network g;
  g.n_ = n_cells;
  g.num_types_ = k;
  g.cell_class_ = std::move(cell_class);
  g.edges_ = std::move(edges);
  g.adjacency_.assign(k, IntMatrix(n_cells, n_cells));
  for (const auto& e : g.edges_) ++g.adjacency_[e.type](e.head, e.tail);
  return g;
}

Network Network::build(int n_cells, std::vector<Edge> edges) {
  return build(n_cells, Partition::whole(n_cells), std::move(edges));
}

const IntMatrix& Network::adjacency(int type) const {
  if (type < 0 || type >= num_types_) throw Error("unknown edge type " + std::to_string(type));
  return adjacency_[type];
}

IntMatrix Network::total_adjacency() const {
  IntMatrix m(n_, n_);
  for (const auto& e : edges_) ++m(e.head, e.tail);
  return m;
}

InputSignature Network::input_signature(int cell) const {
  if (cell < 0 || cell >= n_) throw Error("cell out of range");
  InputSignature sig;
  sig.cell = cell;
  for (const auto& e : edges_) {
    if (e.head != cell) continue;
    sig.tails_by_type[e.type].push_back(e.tail);
    ++sig.type_counts[e.type];
  }
  for (auto& [t, tails] : sig.tails_by_type) std::sort(tails.begin(), tails.end());
  return sig;
}

bool Network::input_equivalent(int c, int d) const {
  if (c == d) return true;
  if (!cell_class_.same_block(c, d)) return false;
  return input_signature(c).type_counts == input_signature(d).type_counts;
}

Partition Network::input_classes() const {
  std::vector<std::map<int, int>> counts(n_);
  for (const auto& e : edges_) ++counts[e.head][e.type];
  std::vector<int> labels(n_);
  std::vector<int> reps;
  for (int c = 0; c < n_; ++c) {
    int label = -1;
    for (int r : reps) {
      if (cell_class_.same_block(c, r) && counts[c] == counts[r]) {
        label = r;
        break;
      }
    }
    if (label == -1) {
      reps.push_back(c);
      label = c;
    }
    labels[c] = label;
  }
  return Partition::from_labels(labels);
}

bool Network::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges_) {
    if (e.head == e.tail) return false;
    if (!seen.emplace(e.tail, e.head).second) return false;
  }
  return true;
}

bool Network::is_homogeneous() const { return input_classes().num_blocks() == 1; }

Network Network::with_types(const std::vector<int>& type_map) const {
  if (static_cast<int>(type_map.size()) != num_types_) throw Error("type map size mismatch");
  auto edges = edges_;
  for (auto& e : edges) e.type = type_map[e.type];
  return build(n_, cell_class_, std::move(edges));
}

Network Network::relabeled(const std::vector<int>& cell_map) const {
  std::vector<char> seen(n_, 0);
  bool ok = static_cast<int>(cell_map.size()) == n_;
  for (int c : cell_map) {
    ok = ok && c >= 0 && c < n_ && !seen[c];
    if (ok) seen[c] = 1;
  }
  if (!ok) throw Error("relabeling is not a bijection on cells");
  auto edges = edges_;
  for (auto& e : edges) {
    e.tail = cell_map[e.tail];
    e.head = cell_map[e.head];
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& b : cell_class_.blocks()) {
    std::vector<int> nb;
    for (int c : b) nb.push_back(cell_map[c]);
    blocks.push_back(std::move(nb));
  }
  return build(n_, Partition(n_, std::move(blocks)), std::move(edges));
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

// Type-label-free invariant of a cell.
std::vector<int> cell_invariant(const Network& g, int c) {
  std::vector<int> in_counts(g.num_types(), 0), out_counts(g.num_types(), 0);
  int loops = 0;
  for (const auto& e : g.edges()) {
    if (e.head == c) ++in_counts[e.type];
    if (e.tail == c) ++out_counts[e.type];
    if (e.head == c && e.tail == c) ++loops;
  }
  auto strip = [](std::vector<int> v) {
    v.erase(std::remove(v.begin(), v.end(), 0), v.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  in_counts = strip(in_counts);
  out_counts = strip(out_counts);
  std::vector<int> inv;
  inv.push_back(static_cast<int>(g.cell_class().block(g.cell_class().block_of(c)).size()));
  inv.push_back(loops);
  inv.push_back(std::accumulate(in_counts.begin(), in_counts.end(), 0));
  inv.push_back(std::accumulate(out_counts.begin(), out_counts.end(), 0));
  inv.push_back(static_cast<int>(in_counts.size()));
  inv.insert(inv.end(), in_counts.begin(), in_counts.end());
  inv.push_back(-1);
  inv.insert(inv.end(), out_counts.begin(), out_counts.end());
  return inv;
}

class IsoSearch {
 public:
  using Visitor = std::function<bool(const Isomorphism&)>;  // false stops

  IsoSearch(const Network& g1, const Network& g2) : g1_(g1), g2_(g2), n_(g1.num_cells()) {}

  void run(const Visitor& visit) {
    if (!compatible()) return;
    k1_ = g1_.num_types();
    k2_ = g2_.num_types();
    edge_count1_.assign(k1_, 0);
    edge_count2_.assign(k2_, 0);
    for (const auto& e : g1_.edges()) ++edge_count1_[e.type];
    for (const auto& e : g2_.edges()) ++edge_count2_[e.type];
    std::vector<char> cand(static_cast<std::size_t>(k1_) * k2_, 0);
    for (int t = 0; t < k1_; ++t) {
      for (int u = 0; u < k2_; ++u) cand[idx(t, u)] = edge_count1_[t] == edge_count2_[u];
    }
    bundles1_.assign(static_cast<std::size_t>(n_) * n_, {});
    for (int t = 0; t < k1_; ++t) {
      const auto& a = g1_.adjacency(t);
      for (int h = 0; h < n_; ++h) {
        for (int s = 0; s < n_; ++s) {
          if (a(h, s) > 0) bundles1_[static_cast<std::size_t>(s) * n_ + h].emplace_back(t, a(h, s));
        }
      }
    }
    total1_ = g1_.total_adjacency();
    total2_ = g2_.total_adjacency();
    for (int c = 0; c < n_; ++c) {
      inv1_.push_back(cell_invariant(g1_, c));
      inv2_.push_back(cell_invariant(g2_, c));
    }
    map_.assign(n_, -1);
    used_.assign(n_, 0);
    class_fwd_.assign(g1_.cell_class().num_blocks(), -1);
    class_bwd_.assign(g2_.cell_class().num_blocks(), -1);
    visit_ = &visit;
    stop_ = false;
    extend(0, cand);
  }

 private:
  std::size_t idx(int t, int u) const { return static_cast<std::size_t>(t) * k2_ + u; }

  bool compatible() const {
    if (g1_.num_cells() != g2_.num_cells()) return false;
    if (g1_.num_types() != g2_.num_types()) return false;
    if (g1_.edges().size() != g2_.edges().size()) return false;
    if (g1_.cell_class().num_blocks() != g2_.cell_class().num_blocks()) return false;
    std::vector<int> s1, s2;
    for (const auto& b : g1_.cell_class().blocks()) s1.push_back(static_cast<int>(b.size()));
    for (const auto& b : g2_.cell_class().blocks()) s2.push_back(static_cast<int>(b.size()));
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    return s1 == s2;
  }

  // Restricts candidate types using the bundle a -> b of g1 and its image.
  bool restrict(int a, int b, std::vector<char>& cand) const {
    int ia = map_[a], ib = map_[b];
    if (total1_(b, a) != total2_(ib, ia)) return false;
    for (const auto& [t, count] : bundles1_[static_cast<std::size_t>(a) * n_ + b]) {
      bool any = false;
      for (int u = 0; u < k2_; ++u) {
        char& ok = cand[idx(t, u)];
        if (ok && g2_.adjacency(u)(ib, ia) != count) ok = 0;
        any = any || ok;
      }
      if (!any) return false;
    }
    return true;
  }

  void extend(int i, const std::vector<char>& cand) {
    if (stop_) return;
    if (i == n_) {
      finish(cand);
      return;
    }
    const int ci = g1_.cell_class().block_of(i);
    for (int j = 0; j < n_ && !stop_; ++j) {
      if (used_[j] || inv1_[i] != inv2_[j]) continue;
      const int cj = g2_.cell_class().block_of(j);
      const bool fresh = class_fwd_[ci] == -1;
      if (fresh ? class_bwd_[cj] != -1 : class_fwd_[ci] != cj) continue;
      if (fresh && g1_.cell_class().block(ci).size() != g2_.cell_class().block(cj).size()) continue;
      map_[i] = j;
      used_[j] = 1;
      if (fresh) {
        class_fwd_[ci] = cj;
        class_bwd_[cj] = ci;
      }
      std::vector<char> next = cand;
      bool ok = true;
      for (int k = 0; k <= i && ok; ++k) {
        ok = restrict(i, k, next) && (k == i || restrict(k, i, next));
      }
      if (ok) extend(i + 1, next);
      if (fresh) {
        class_fwd_[ci] = -1;
        class_bwd_[cj] = -1;
      }
      used_[j] = 0;
      map_[i] = -1;
    }
  }

  void finish(const std::vector<char>& cand) {
    Isomorphism iso{map_, std::vector<int>(k1_, -1)};
    std::vector<char> taken(k2_, 0);
    for (int t = 0; t < k1_; ++t) {
      IntMatrix moved(n_, n_);
      const auto& a = g1_.adjacency(t);
      for (int h = 0; h < n_; ++h) {
        for (int s = 0; s < n_; ++s) moved(map_[h], map_[s]) = a(h, s);
      }
      for (int u = 0; u < k2_; ++u) {
        if (taken[u] || !cand[idx(t, u)]) continue;
        if (g2_.adjacency(u) == moved) {
          iso.type_map[t] = u;
          taken[u] = 1;
          break;
        }
      }
      if (iso.type_map[t] == -1) return;
    }
    if (!(*visit_)(iso)) stop_ = true;
  }

  const Network& g1_;
  const Network& g2_;
  int n_;
  int k1_ = 0, k2_ = 0;
  std::vector<int> edge_count1_, edge_count2_;
  std::vector<std::vector<std::pair<int, int>>> bundles1_;
  IntMatrix total1_, total2_;
  std::vector<std::vector<int>> inv1_, inv2_;
  std::vector<int> map_;
  std::vector<char> used_;
  std::vector<int> class_fwd_, class_bwd_;
  const Visitor* visit_ = nullptr;
  bool stop_ = false;
};

void check_bound(const Network& g) {
  if (g.num_cells() > permutation_bound()) {
    throw BoundExceeded("network has " + std::to_string(g.num_cells()) +
                        " cells; brute-force bound is " + std::to_string(permutation_bound()));
  }
}

}  // namespace

std::optional<Isomorphism> is_isomorphic(const Network& g1, const Network& g2) {
  std::optional<Isomorphism> found;
  IsoSearch(g1, g2).run([&](const Isomorphism& iso) {
    found = iso;
    return false;
  });
  return found;
}

std::vector<Isomorphism> automorphism_group(const Network& g) {
  check_bound(g);
  std::vector<Isomorphism> out;
  IsoSearch(g, g).run([&](const Isomorphism& iso) {
    out.push_back(iso);
    return true;
  });
  return out;
}

std::vector<std::vector<int>> automorphism_cell_maps(const Network& g) {
  std::vector<std::vector<int>> maps;
  for (auto& a : automorphism_group(g)) maps.push_back(std::move(a.cell_map));
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  return maps;
}

// ---------------------------------------------------------------------------
// Canonical key: cells are first ordered by an iteratively refined,
// label-free colour; the key is the lexicographic minimum of the serialized
// (class labels, sorted per-type matrices) over all orderings that respect the
// colour order.

namespace {

std::vector<int> refine_colours(const Network& g) {
  const int n = g.num_cells();
  const IntMatrix total = g.total_adjacency();
  std::vector<std::vector<int>> sig(n);
  for (int c = 0; c < n; ++c) sig[c] = cell_invariant(g, c);
  auto rank = [&](const std::vector<std::vector<int>>& s) {
    std::vector<std::vector<int>> distinct = s;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> colour(n);
    for (int c = 0; c < n; ++c) {
      colour[c] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), s[c]) -
                                   distinct.begin());
    }
    return colour;
  };
  std::vector<int> colour = rank(sig);
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<int>> next(n);
    for (int c = 0; c < n; ++c) {
      std::vector<std::pair<int, int>> in, out;
      for (int d = 0; d < n; ++d) {
        if (total(c, d) > 0) in.emplace_back(colour[d], total(c, d));
        if (total(d, c) > 0) out.emplace_back(colour[d], total(d, c));
      }
      std::sort(in.begin(), in.end());
      std::sort(out.begin(), out.end());
      next[c] = {colour[c], -1};
      for (auto [a, b] : in) next[c].insert(next[c].end(), {a, b});
      next[c].push_back(-2);
      for (auto [a, b] : out) next[c].insert(next[c].end(), {a, b});
    }
    std::vector<int> refined = rank(next);
    int before = *std::max_element(colour.begin(), colour.end());
    int after = *std::max_element(refined.begin(), refined.end());
    colour = std::move(refined);
    if (after == before) break;
  }
  return colour;
}

std::string serialize(const Network& g, const std::vector<int>& order,
                      const std::vector<int>& colour) {
  // order[p] = original cell placed at position p
  const int n = g.num_cells();
  std::vector<int> out;
  out.push_back(n);
  out.push_back(g.num_types());
  for (int p = 0; p < n; ++p) out.push_back(colour[order[p]]);
  std::vector<int> class_label(g.cell_class().num_blocks(), -1);
  int next_label = 0;
  for (int p = 0; p < n; ++p) {
    int b = g.cell_class().block_of(order[p]);
    if (class_label[b] == -1) class_label[b] = next_label++;
    out.push_back(class_label[b]);
  }
  std::vector<std::vector<int>> mats;
  for (int t = 0; t < g.num_types(); ++t) {
    const auto& a = g.adjacency(t);
    std::vector<int> m(static_cast<std::size_t>(n) * n);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) m[static_cast<std::size_t>(p) * n + q] = a(order[p], order[q]);
    }
    mats.push_back(std::move(m));
  }
  std::sort(mats.begin(), mats.end());
  for (const auto& m : mats) out.insert(out.end(), m.begin(), m.end());
  std::string bytes;
  bytes.reserve(out.size() * 4);
  for (int v : out) {
    auto u = static_cast<unsigned>(v);
    for (int s = 24; s >= 0; s -= 8) bytes.push_back(static_cast<char>((u >> s) & 0xFFu));
  }
  return bytes;
}

}  // namespace

std::string canonical_key(const Network& g) {
  check_bound(g);
  const int n = g.num_cells();
  std::vector<int> colour = refine_colours(g);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return colour[a] < colour[b]; });
  // Permute within each colour group: iterate next_permutation group-wise.
  std::vector<std::pair<int, int>> groups;  // [begin, end)
  for (int p = 0; p < n;) {
    int q = p;
    while (q < n && colour[order[q]] == colour[order[p]]) ++q;
    groups.emplace_back(p, q);
    p = q;
  }
  std::string best = serialize(g, order, colour);
  for (;;) {
    int gi = static_cast<int>(groups.size()) - 1;
    for (; gi >= 0; --gi) {
      auto [b, e] = groups[gi];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
      // wrapped around to sorted order; carry into the previous group
    }
    if (gi < 0) break;
    std::string s = serialize(g, order, colour);
    if (s < best) best = std::move(s);
  }
  return best;
}

bool is_equitable(const Network& g, const Partition& p) {
  if (p.size() != g.num_cells()) throw Error("partition size does not match network");
  for (const auto& block : p.blocks()) {
    for (int c : block) {
      if (!g.cell_class().same_block(c, block.front())) return false;
    }
  }
  for (int t = 0; t < g.num_types(); ++t) {
    const auto& a = g.adjacency(t);
    for (const auto& block : p.blocks()) {
      std::vector<int> ref(p.num_blocks(), 0);
      for (int d = 0; d < g.num_cells(); ++d) ref[p.block_of(d)] += a(block.front(), d);
      for (std::size_t k = 1; k < block.size(); ++k) {
        std::vector<int> row(p.num_blocks(), 0);
        for (int d = 0; d < g.num_cells(); ++d) row[p.block_of(d)] += a(block[k], d);
        if (row != ref) return false;
      }
    }
  }
  return true;
}

Network quotient_network(const Network& g, const Partition& p) {
  if (!is_equitable(g, p)) {
    throw ValidationError("partition " + p.to_string() + " is not balanced");
  }
  const int m = p.num_blocks();
  std::vector<Edge> edges;
  for (int b = 0; b < m; ++b) {
    int rep = p.block(b).front();
    for (const auto& e : g.edges()) {
      if (e.head == rep) edges.push_back({p.block_of(e.tail), b, e.type});
    }
  }
  std::vector<int> labels(m);
  for (int b = 0; b < m; ++b) labels[b] = g.cell_class().block_of(p.block(b).front());
  return Network::build(m, Partition::from_labels(labels), std::move(edges));
}

}  // namespace admnet
