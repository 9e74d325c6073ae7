#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "admnet/io.hpp"
#include "admnet/network.hpp"
#include "admnet/partition.hpp"
#include "admnet/vector_field.hpp"

namespace testsupport {

inline std::string data(const std::string& name) { return std::string(ADMNET_DATA_DIR) + "/" + name; }

inline admnet::VectorFieldSpec field(const std::string& name) { return admnet::load_field(data(name)); }

inline admnet::Network network(const std::string& name) {
  return admnet::network_from_json(admnet::load_json(data(name)));
}

/// Six-cell ring, each cell fed by its neighbours at distance one and two.
inline admnet::Network g6() {
  std::vector<admnet::Edge> edges;
  for (int i = 0; i < 6; ++i) {
    for (int d : {-2, -1, 1, 2}) edges.push_back({(i + d + 6) % 6, i, 0});
  }
  return admnet::Network::build(6, std::move(edges));
}

/// Partition of 1-based cells, singletons filled in.
inline admnet::Partition blocks(int n, std::vector<std::vector<int>> groups) {
  std::vector<char> seen(n, 0);
  for (auto& g : groups) {
    for (int& c : g) seen[--c] = 1;
  }
  for (int c = 0; c < n; ++c) {
    if (!seen[c]) groups.push_back({c});
  }
  return admnet::Partition(n, std::move(groups));
}

/// Synchrony patterns (1)..(29) of the six-cell ring; index 0 unused.
inline std::vector<admnet::Partition> ring_patterns() {
  const std::vector<std::vector<std::vector<int>>> spec = {
      {},
      {{1, 4}}, {{2, 5}}, {{3, 6}},
      {{1, 2, 4, 5}}, {{1, 3, 4, 6}}, {{2, 3, 5, 6}},
      {{1, 2}, {4, 5}}, {{1, 3}, {4, 6}}, {{1, 5}, {2, 4}}, {{1, 6}, {3, 4}}, {{2, 3}, {5, 6}}, {{2, 6}, {3, 5}},
      {{1, 4}, {2, 5}}, {{1, 4}, {3, 6}}, {{2, 5}, {3, 6}},
      {{1, 2, 4, 5}, {3, 6}}, {{1, 3, 4, 6}, {2, 5}}, {{1, 4}, {2, 3, 5, 6}},
      {{1, 2, 3}, {4, 5, 6}}, {{1, 2, 6}, {3, 4, 5}}, {{1, 3, 5}, {2, 4, 6}}, {{1, 5, 6}, {2, 3, 4}},
      {{1, 2}, {3, 6}, {4, 5}}, {{1, 3}, {2, 5}, {4, 6}}, {{1, 4}, {2, 3}, {5, 6}},
      {{1, 4}, {2, 6}, {3, 5}}, {{1, 5}, {2, 4}, {3, 6}}, {{1, 6}, {2, 5}, {3, 4}},
      {{1, 4}, {2, 5}, {3, 6}},
  };
  std::vector<admnet::Partition> out;
  out.push_back(admnet::Partition::singletons(6));
  for (std::size_t i = 1; i < spec.size(); ++i) out.push_back(blocks(6, spec[i]));
  return out;
}

/// Pattern numbers listed for the eight admissible graphs of the R^6 case
/// study, with the size of each ODE-equivalence companion set.
struct CaseStudyRow {
  std::vector<int> patterns;
  int sigma;
};

inline std::vector<CaseStudyRow> case_study_rows() {
  return {
      {{16, 17, 18, 21, 29}, 1},
      {{2, 16, 17, 18, 21, 29}, 6},
      {{2, 3, 6, 12, 15, 16, 17, 18, 21, 26, 29}, 6},
      {{1, 2, 13, 16, 17, 18, 21, 29}, 6},
      {{9, 12, 16, 17, 18, 21, 26, 27, 29}, 3},
      {{1, 2, 3, 5, 6, 8, 12, 13, 14, 15, 16, 17, 18, 21, 23, 24, 26, 29}, 3},
      {{3, 9, 16, 17, 18, 21, 27, 29}, 6},
      {{1, 2, 3, 13, 14, 15, 16, 17, 18, 21, 23, 25, 28, 29}, 1},
  };
}

/// Field on n scalar cells built from one or two generators g(y, y1..yk):
/// y^2 plus products over random slot groups, groups of equal size sharing
/// a coefficient at random. Each cell feeds its generator from k distinct
/// other cells in random order.
inline admnet::VectorFieldSpec random_field(std::mt19937& rng, int n) {
  using admnet::Polynomial;
  const int k = 1 + static_cast<int>(rng() % std::min(4, n - 1));
  struct Gen {
    std::vector<std::vector<int>> groups;
    std::vector<int> coeff;
  };
  auto make_gen = [&] {
    Gen g;
    std::vector<int> slots(k);
    for (int i = 0; i < k; ++i) slots[i] = i;
    std::shuffle(slots.begin(), slots.end(), rng);
    for (int i = 0; i < k;) {
      const int len = 1 + static_cast<int>(rng() % (k - i));
      g.groups.emplace_back(slots.begin() + i, slots.begin() + i + len);
      i += len;
    }
    std::map<std::size_t, int> by_size;
    for (const auto& grp : g.groups) {
      auto it = by_size.find(grp.size());
      if (it != by_size.end() && rng() % 2) {
        g.coeff.push_back(it->second);
      } else {
        g.coeff.push_back(1 + static_cast<int>(rng() % 3));
        by_size[grp.size()] = g.coeff.back();
      }
    }
    return g;
  };
  std::vector<Gen> gens = {make_gen()};
  if (rng() % 3 == 0) gens.push_back(make_gen());

  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  std::vector<Polynomial> comps;
  for (int c = 0; c < n; ++c) {
    const Gen& g = gens[rng() % gens.size()];
    std::vector<int> others;
    for (int d = 0; d < n; ++d) {
      if (d != c) others.push_back(d);
    }
    std::shuffle(others.begin(), others.end(), rng);
    Polynomial f = Polynomial::variable(n, c) * Polynomial::variable(n, c);
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
      Polynomial term = Polynomial::constant(n, g.coeff[i]);
      for (int slot : g.groups[i]) term *= Polynomial::variable(n, others[slot]);
      f += term;
    }
    comps.push_back(f);
  }
  return admnet::VectorFieldSpec::scalar(names, comps);
}

/// Random network on n cells in one class with up to three edge types.
inline admnet::Network random_network(std::mt19937& rng, int n) {
  const int types = 1 + static_cast<int>(rng() % 3);
  std::vector<admnet::Edge> edges;
  for (int t = 0; t < types; ++t) {
    edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), t});
    for (int k = 0; k < n; ++k) {
      if (rng() % 2) edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), t});
    }
  }
  return admnet::Network::build(n, std::move(edges));
}

inline std::vector<int> random_permutation(std::mt19937& rng, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

}  // namespace testsupport
