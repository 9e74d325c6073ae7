#include <doctest.h>

#include <cmath>
#include <random>

#include "admnet/dynamics.hpp"
#include "admnet/error.hpp"
#include "admnet/network.hpp"
#include "admnet/realize.hpp"
#include "admnet/synchrony.hpp"
#include "support.hpp"

using namespace admnet;

namespace {

VectorFieldSpec harmonic() {
  std::vector<std::string> v = {"x", "y"};
  return VectorFieldSpec::scalar(v, {parse_polynomial("y", v), parse_polynomial("-x", v)});
}

double harmonic_error(double dt) {
  auto tr = integrate_rk4(harmonic(), {1.0, 0.0}, 10.0, dt, 1000000);
  const auto& x = tr.states.back();
  return std::hypot(x[0] - std::cos(10.0), x[1] + std::sin(10.0));
}

RationalMatrix jacobian_at_zero(const VectorFieldSpec& f) {
  const int n = f.dimension();
  std::vector<Rational> zero(n, 0);
  RationalMatrix df(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) df(i, j) = evaluate(partial_derivative(f.components[i], j), zero);
  }
  return df;
}

}  // namespace

TEST_CASE("RK4 against the harmonic oscillator") {
  auto tr = integrate_rk4(harmonic(), {1.0, 0.0}, 1.0, 0.3);
  REQUIRE(tr.times.size() == 5);
  CHECK(tr.times.back() == doctest::Approx(1.0));
  CHECK(tr.times[3] == doctest::Approx(0.9));
  CHECK(harmonic_error(1e-3) < 1e-10);

  double ratio = harmonic_error(0.1) / harmonic_error(0.05);
  CHECK(ratio > 12);
  CHECK(ratio < 20);
}

TEST_CASE("stride and argument checks") {
  auto tr = integrate_rk4(harmonic(), {1.0, 0.0}, 1.0, 0.01, 10);
  CHECK(tr.times.size() == 11);
  CHECK(tr.states.size() == tr.times.size());
  CHECK_THROWS_AS(integrate_rk4(harmonic(), {1.0}, 1.0, 0.01), ValidationError);
  CHECK_THROWS_AS(integrate_rk4(harmonic(), {1.0, 0.0}, 1.0, 0.0), ValidationError);

  std::vector<std::string> v = {"x"};
  auto blowup = VectorFieldSpec::scalar(v, {parse_polynomial("x^2", v)});
  CHECK_THROWS_AS(integrate_rk4(blowup, {10.0}, 5.0, 0.1), Error);
}

TEST_CASE("projection onto a polydiagonal") {
  std::vector<double> x = {1, 2, 3, 5};
  auto p = Partition(4, {{0, 2}, {1}, {3}});
  auto y = project_polydiagonal(x, p);
  CHECK(y == std::vector<double>{2, 2, 2, 5});
  CHECK(project_polydiagonal(y, p) == y);

  std::vector<int> dims = {2, 2};
  auto z = project_polydiagonal(std::vector<double>{1, 2, 3, 4}, Partition::whole(2), dims);
  CHECK(z == std::vector<double>{2, 3, 2, 3});
  CHECK_THROWS_AS(project_polydiagonal(std::vector<double>{1, 2, 3}, Partition::whole(2), dims),
                  ValidationError);
}

TEST_CASE("sync deviation and CSV") {
  Trajectory tr{{0.0, 0.5}, {{1, 1, 2}, {1, 1.25, 0}}};
  CHECK(sync_deviation(tr, Partition(3, {{0, 1}, {2}})) == doctest::Approx(0.25));
  CHECK(sync_deviation(tr, Partition::singletons(3)) == 0);
  CHECK(trajectory_csv(tr, {"a", "b", "c"}) == "t,a,b,c\n0,1,1,2\n0.5,1,1.25,0\n");
}

TEST_CASE("oscillator ring field") {
  auto f = vdp_network_field({});
  CHECK(f.dimension() == 12);
  CHECK(f.num_cells() == 6);
  CHECK(f.var_names[0] == "x1");
  CHECK(f.var_names[3] == "y2");
  CHECK(f.components[0] == parse_polynomial("y1", f.var_names));
  CHECK(evaluate(f, std::vector<Rational>(12, 0)) == std::vector<Rational>(12, 0));

  // step-1 graph is the ring with neighbours at distance one and two
  auto g1 = step1_simple(f);
  CHECK(canonical_key(g1.with_types(std::vector<int>(g1.num_types(), 0))) == canonical_key(testsupport::g6()));

  SUBCASE("parameters parse exactly") {
    auto p = parse_vdp_params("eps=0.5, eta=0,n=7");
    CHECK(p.eps == 0.5);
    CHECK(p.eta == 0);
    CHECK(p.n_osc == 7);
    CHECK(vdp_network_field(p).num_cells() == 7);
    CHECK_THROWS_AS(parse_vdp_params("gamma=1"), ParseError);
    CHECK_THROWS_AS(parse_vdp_params("eps"), ParseError);
    CHECK_THROWS_AS(parse_vdp_params("eps=x"), ParseError);
    CHECK_THROWS_AS(vdp_network_field(parse_vdp_params("n=4")), ValidationError);
  }
}

TEST_CASE("balanced patterns are flow invariant, others are not") {
  auto f = vdp_network_field({});
  auto g = testsupport::g6();
  std::vector<int> dims(6, 2);
  auto patterns = testsupport::ring_patterns();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-1, 1);
  for (int k : {1, 4, 13, 21, 29}) {
    std::vector<double> x0(12);
    for (double& v : x0) v = dist(rng);
    x0 = project_polydiagonal(x0, patterns[k], dims);
    auto tr = integrate_rk4(f, x0, 5.0, 1e-2, 10);
    CHECK(sync_deviation(tr, patterns[k], dims) < 1e-10);
  }

  SUBCASE("linearization leaves no unbalanced polydiagonal invariant") {
    auto df = jacobian_at_zero(f);
    for (const auto& p : enumerate_partitions(Partition::whole(6))) {
      CHECK(column_space_invariant(df, polydiagonal_basis(p, dims)) == is_balanced(g, p));
    }
  }
}
