#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "admnet/error.hpp"
#include "admnet/network.hpp"
#include "support.hpp"

using namespace admnet;

namespace {

std::vector<int> random_perm(std::mt19937& rng, int n) { return testsupport::random_permutation(rng, n); }

Network random_network(std::mt19937& rng, int n, int types) {
  std::vector<Edge> edges;
  for (int t = 0; t < types; ++t) {
    edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), t});
    for (int k = 0; k < n; ++k) {
      if (rng() % 2) edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), t});
    }
  }
  return Network::build(n, edges);
}

}  // namespace

TEST_CASE("build validates") {
  CHECK_THROWS_AS(Network::build(0, {}), ValidationError);
  CHECK_THROWS_AS(Network::build(2, {{0, 2, 0}}), ValidationError);
  CHECK_THROWS_AS(Network::build(2, {{0, 1, -1}}), ValidationError);
  CHECK_THROWS_AS(Network::build(2, {{0, 1, 1}}), ValidationError);  // type 0 unused
  // one type with heads in different classes
  CHECK_THROWS_AS(Network::build(3, Partition(3, {{0, 1}, {2}}), {{0, 1, 0}, {0, 2, 0}}), ValidationError);
  CHECK_THROWS_AS(Network::build(3, Partition::whole(2), {}), ValidationError);
  CHECK_NOTHROW(Network::build(3, Partition(3, {{0, 1}, {2}}), {{0, 1, 0}, {1, 0, 0}, {2, 0, 1}}));
}

TEST_CASE("adjacency and signatures") {
  auto g = Network::build(3, {{0, 1, 0}, {0, 1, 0}, {2, 1, 1}, {1, 1, 1}, {1, 2, 0}});
  CHECK(g.adjacency(0)(1, 0) == 2);
  CHECK(g.adjacency(1)(1, 1) == 1);
  CHECK(g.total_adjacency()(1, 2) == 1);
  CHECK_THROWS_AS(g.adjacency(2), Error);
  auto sig = g.input_signature(1);
  CHECK(sig.valency() == 4);
  CHECK(sig.tails_by_type[0] == std::vector<int>{0, 0});
  CHECK(sig.tails_by_type[1] == std::vector<int>{1, 2});
  CHECK_FALSE(g.is_simple());
  CHECK_FALSE(g.input_equivalent(0, 2));
  CHECK(g.input_classes() == Partition(3, {{0}, {1}, {2}}));
  CHECK_FALSE(g.is_homogeneous());

  auto ring = testsupport::g6();
  CHECK(ring.is_simple());
  CHECK(ring.is_homogeneous());
  CHECK(ring.input_classes().is_top());
}

TEST_CASE("type merges and relabeling") {
  auto g = Network::build(3, {{0, 1, 0}, {2, 1, 1}, {1, 2, 2}});
  auto m = g.with_types({0, 0, 1});
  CHECK(m.num_types() == 2);
  CHECK(m.edges()[1].type == 0);
  CHECK_THROWS_AS(g.with_types({0, 1}), Error);

  auto r = g.relabeled({2, 0, 1});
  CHECK(r.adjacency(0)(0, 2) == 1);
  CHECK_THROWS_AS(g.relabeled({0, 0, 1}), Error);
}

TEST_CASE("isomorphism") {
  auto g6 = testsupport::g6();
  auto ring = testsupport::network("ring6.json");
  CHECK_FALSE(is_isomorphic(g6, ring).has_value());
  auto self = is_isomorphic(g6, g6);
  REQUIRE(self.has_value());
  CHECK(self->cell_map == std::vector<int>{0, 1, 2, 3, 4, 5});

  SUBCASE("types may be permuted") {
    auto a = Network::build(2, {{0, 1, 0}, {1, 0, 1}});
    auto b = Network::build(2, {{0, 1, 1}, {1, 0, 0}});
    auto w = is_isomorphic(a, b);
    REQUIRE(w.has_value());
    CHECK(w->cell_map == std::vector<int>{0, 1});
    CHECK(w->type_map == std::vector<int>{1, 0});
  }
  SUBCASE("classes are respected") {
    auto a = Network::build(2, Partition::singletons(2), {});
    auto b = Network::build(2, {});
    CHECK_FALSE(is_isomorphic(a, b).has_value());
  }
  SUBCASE("random relabelings are isomorphic with the same key") {
    std::mt19937 rng(5);
    for (int k = 0; k < 40; ++k) {
      const int n = 2 + static_cast<int>(rng() % 5);
      auto g = random_network(rng, n, 1 + static_cast<int>(rng() % 3));
      auto perm = random_perm(rng, n);
      auto h = g.relabeled(perm);
      auto w = is_isomorphic(g, h);
      REQUIRE(w.has_value());
      CHECK(g.relabeled(w->cell_map).with_types(w->type_map).num_types() == h.num_types());
      CHECK(canonical_key(g) == canonical_key(h));
    }
  }
  SUBCASE("key separates non-isomorphic networks") {
    std::mt19937 rng(9);
    for (int k = 0; k < 60; ++k) {
      auto a = random_network(rng, 4, 2);
      auto b = random_network(rng, 4, 2);
      CHECK((canonical_key(a) == canonical_key(b)) == is_isomorphic(a, b).has_value());
    }
  }
}

TEST_CASE("automorphisms") {
  auto g6 = testsupport::g6();
  auto group = automorphism_group(g6);
  CHECK(group.size() == 48);
  CHECK(group.front().cell_map == std::vector<int>{0, 1, 2, 3, 4, 5});
  std::set<std::vector<int>> maps;
  for (const auto& a : group) maps.insert(a.cell_map);
  CHECK(maps.size() == 48);
  CHECK(automorphism_cell_maps(g6).size() == 48);
  CHECK(automorphism_group(testsupport::network("ring6.json")).size() == 6);
  CHECK(automorphism_group(Network::build(4, {})).size() == 24);

  // two identical types can be swapped by the same cell map
  auto twin = Network::build(2, {{0, 1, 0}, {0, 1, 1}});
  CHECK(automorphism_group(twin).size() == 1);
}

TEST_CASE("permutation bound") {
  CHECK_THROWS_AS(automorphism_group(Network::build(11, {})), BoundExceeded);
  CHECK_THROWS_AS(canonical_key(Network::build(11, {})), BoundExceeded);
}

TEST_CASE("equitable partitions and quotients") {
  auto g6 = testsupport::g6();
  auto p = testsupport::blocks(6, {{1, 3, 5}, {2, 4, 6}});
  CHECK(is_equitable(g6, p));
  auto q = quotient_network(g6, p);
  CHECK(q.num_cells() == 2);
  CHECK(q.adjacency(0)(0, 0) == 2);
  CHECK(q.adjacency(0)(0, 1) == 2);
  CHECK_FALSE(is_equitable(g6, testsupport::blocks(6, {{1, 2}})));
  CHECK_THROWS_AS(quotient_network(g6, testsupport::blocks(6, {{1, 2}})), ValidationError);
  CHECK_THROWS_AS(is_equitable(g6, Partition::whole(3)), Error);
}
