#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "admnet/dynamics.hpp"
#include "admnet/odeeq.hpp"
#include "admnet/realize.hpp"
#include "admnet/synchrony.hpp"
#include "../support.hpp"

using namespace admnet;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

std::set<std::pair<int, int>> edge_set(const Network& g) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : g.edges()) out.emplace(e.tail + 1, e.head + 1);
  return out;
}

std::set<Partition> nontrivial(const Network& g) {
  std::set<Partition> out;
  for (const auto& p : enumerate_balanced(g).patterns) {
    if (!p.is_bottom() && !p.is_top()) out.insert(p);
  }
  return out;
}

void small_fields(Outcome& o) {
  auto f = testsupport::field("r3.field");
  auto r = realize_all(f);
  bool found = false;
  for (const auto& c : r.iso_classes) {
    const auto& g = c.network;
    if (c.optimized && g.num_types() == 1 && g.is_simple() &&
        edge_set(g) == std::set<std::pair<int, int>>{{3, 2}, {1, 3}, {2, 3}}) {
      found = true;
    }
  }
  o.expect(found, "single-type step-4 graph with I(2)={3}, I(3)={1,2}");

  auto a = assignment_from_json(load_json(testsupport::data("r3_assignment.json")));
  auto ra = realize_all(f, a);
  bool multi = false;
  for (const auto& c : ra.iso_classes) {
    const auto& g = c.network;
    if (g.total_adjacency().data == std::vector<int>{3, 0, 0, 0, 2, 1, 1, 1, 1}) {
      multi = verify_admissible(g, f, a);
    }
  }
  o.expect(multi, "admissible multigraph [[3,0,0],[0,2,1],[1,1,1]]");
}

void four_cells(Outcome& o) {
  auto f = testsupport::field("r4.field");
  auto in = prepare_realization(f);
  auto s = step2_interchange_blocks(in);
  std::size_t blocks = 0;
  for (const auto& c : s.cells) blocks += c.blocks.size();
  o.expect(blocks == 6, "six edge classes at step 2, got " + std::to_string(blocks));

  auto q = step3_input_classes(in, s);
  auto g3 = step3_enumerate(in, s, q);
  o.expect(g3.size() == 1, "one step-3 graph");
  if (g3.size() != 1) return;
  o.expect(g3[0].num_types() == 3, "three edge classes at step 3");

  std::vector<Network> opt;
  for (const auto& v : step4_variants(g3[0])) {
    if (v.optimized) opt.push_back(v.network);
  }
  o.expect(opt.size() == 2, "two optimized step-4 graphs, got " + std::to_string(opt.size()));
  if (opt.size() != 2) return;
  o.expect(!is_isomorphic(opt[0], opt[1]).has_value(), "optimized graphs not isomorphic");
  auto w = ode_equivalent(opt[0], opt[1]);
  o.expect(w && *w == std::vector<int>{0, 1, 2, 3}, "identity ODE-equivalence witness");
  auto l0 = linear_admissible_basis(opt[0]);
  auto l1 = linear_admissible_basis(opt[1]);
  o.expect(span_dimension(l0) == 5 && span_dimension(l1) == 5, "span dimensions 5");
  o.expect(span_equal(l0, l1), "equal spans");
}

void six_cells(Outcome& o) {
  auto f = testsupport::field("r6_fixture.field");
  auto r = realize_all(f);
  o.expect(r.theta == 32, "theta 32, got " + std::to_string(r.theta));
  auto nets = step3_enumerate(f);
  o.expect(nets.size() == 32, "32 step-3 networks");
  std::set<std::string> keys;
  for (const auto& g : nets) keys.insert(canonical_key(g));
  o.expect(keys.size() == 8, "8 canonical keys, got " + std::to_string(keys.size()));

  std::vector<const IsoClassReport*> classes;
  for (const auto& c : r.iso_classes) {
    if (c.step3) classes.push_back(&c);
  }
  o.expect(classes.size() == 8, "8 step-3 classes in the report");
  bool distinct = true;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (ode_equivalent(classes[i]->network, classes[j]->network)) distinct = false;
    }
  }
  o.expect(distinct, "classes pairwise non-ODE-equivalent");

  std::multiset<std::uint64_t> sigmas;
  std::uint64_t total = 0;
  for (const auto* c : classes) {
    sigmas.insert(c->sigma);
    total += c->sigma;
  }
  o.expect(sigmas == std::multiset<std::uint64_t>{1, 1, 3, 3, 6, 6, 6, 6} && total == 32,
           "sigma multiset {1,1,3,3,6,6,6,6}");

  // Pair each listed row with a class of the same sigma whose pattern count
  // matches; report the rows left over.
  std::multiset<std::pair<std::uint64_t, std::size_t>> have;
  for (const auto* c : classes) have.emplace(c->sigma, nontrivial(c->network).size());
  std::ostringstream missing;
  for (const auto& row : testsupport::case_study_rows()) {
    auto it = have.find({static_cast<std::uint64_t>(row.sigma), row.patterns.size()});
    if (it != have.end()) {
      have.erase(it);
    } else {
      missing << " sigma " << row.sigma << " with " << row.patterns.size() << " patterns;";
    }
  }
  std::ostringstream extra;
  for (const auto& [sigma, count] : have) extra << " sigma " << sigma << " with " << count << " patterns;";
  o.expect(missing.str().empty(), "rows without a matching class:" + missing.str() +
                                      " unmatched classes:" + extra.str());
}

void ring_synchrony(Outcome& o) {
  auto g = testsupport::g6();
  auto lattice = enumerate_balanced(g);
  auto table = testsupport::ring_patterns();
  std::set<Partition> expected(table.begin() + 1, table.end());
  std::set<Partition> got;
  for (const auto& p : lattice.patterns) {
    if (!p.is_bottom() && !p.is_top()) got.insert(p);
  }
  o.expect(lattice.patterns.size() == 31, "31 balanced partitions");
  o.expect(got == expected, "nontrivial patterns equal the tabulated 29");

  std::set<Partition> chimera;
  for (int i : lattice.chimera) chimera.insert(lattice.patterns[i]);
  o.expect(chimera == std::set<Partition>(table.begin() + 1, table.begin() + 16), "15 chimera patterns");

  o.expect(automorphism_group(g).size() == 48, "48 automorphisms");
  o.expect(orbit_partition(g, {{2, 3, 4, 5, 0, 1}}) == table[21], "orbits of (1 3 5)(2 4 6)");
  o.expect(orbit_partition(g, {{3, 4, 5, 0, 1, 2}}) == table[29], "orbits of (1 4)(2 5)(3 6)");
}

void flow_invariance(Outcome& o) {
  const std::vector<std::string> params = {
      "",
      "b=0.5,eps=0.1,eta=0.05",
      "b=2,omega0=1.5,alpha1=0.3,alpha2=0.05,eps=0.5,eta=0.4",
  };
  auto table = testsupport::ring_patterns();
  std::vector<int> dims(6, 2);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst_sync = 0;
  double least_perturbed = 1e300;
  for (const auto& text : params) {
    auto f = vdp_network_field(parse_vdp_params(text));
    for (int k = 1; k <= 29; ++k) {
      std::vector<double> x0(12);
      for (double& v : x0) v = dist(rng);
      x0 = project_polydiagonal(x0, table[k], dims);
      auto tr = integrate_rk4(f, x0, 50.0, 1e-3, 100);
      worst_sync = std::max(worst_sync, sync_deviation(tr, table[k], dims));

      // push the first cell of the first nontrivial block off the polydiagonal
      int cell = -1;
      for (const auto& b : table[k].blocks()) {
        if (b.size() > 1) {
          cell = b.front();
          break;
        }
      }
      auto x1 = x0;
      x1[2 * cell] += 0.1;
      auto tp = integrate_rk4(f, x1, 50.0, 1e-3, 100);
      // deviation after the first time unit
      Trajectory late;
      for (std::size_t i = 0; i < tp.times.size(); ++i) {
        if (tp.times[i] >= 1.0) {
          late.times.push_back(tp.times[i]);
          late.states.push_back(tp.states[i]);
        }
      }
      least_perturbed = std::min(least_perturbed, sync_deviation(late, table[k], dims));
    }
  }
  std::ostringstream a, b;
  a << "max deviation on the polydiagonal " << worst_sync;
  b << "min deviation after perturbation " << least_perturbed;
  o.expect(worst_sync < 1e-8, a.str());
  o.expect(least_perturbed > 1e-3, b.str());
  o.detail << " (" << a.str() << ", " << b.str() << ")";
}

double harmonic_error(double dt) {
  std::vector<std::string> v = {"x", "y"};
  auto f = VectorFieldSpec::scalar(v, {parse_polynomial("y", v), parse_polynomial("-x", v)});
  auto tr = integrate_rk4(f, {1.0, 0.0}, 10.0, dt, 1 << 30);
  const auto& x = tr.states.back();
  return std::hypot(x[0] - std::cos(10.0), x[1] + std::sin(10.0));
}

void properties(Outcome& o) {
  std::mt19937 rng(20240611);
  int theta_ok = 0;
  int admissible_bad = 0;
  std::vector<VectorFieldSpec> fields;
  for (int k = 0; k < 20; ++k) fields.push_back(testsupport::random_field(rng, 2 + static_cast<int>(rng() % 5)));
  for (const auto& f : fields) {
    if (theta(f) == step3_enumerate(f).size()) ++theta_ok;
  }
  o.expect(theta_ok == 20, "theta equals the step-3 count on " + std::to_string(theta_ok) + "/20 fields");

  for (const char* name : {"r3.field", "r4.field", "r4_3cell.field", "r6_fixture.field"}) {
    fields.push_back(testsupport::field(name));
  }
  for (const auto& f : fields) {
    for (const auto& c : realize_all(f).iso_classes) {
      if (!verify_admissible(c.network, f)) ++admissible_bad;
    }
  }
  o.expect(admissible_bad == 0, std::to_string(admissible_bad) + " emitted networks not admissible");

  int ode_bad = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + static_cast<int>(rng() % 5);
    auto g = testsupport::random_network(rng, n);
    auto h = g.relabeled(testsupport::random_permutation(rng, n));
    if (!is_isomorphic(g, h) || !ode_equivalent(g, h)) ++ode_bad;
  }
  o.expect(ode_bad == 0, std::to_string(ode_bad) + "/50 relabeled pairs not ODE-equivalent");

  const double ratio = harmonic_error(0.1) / harmonic_error(0.05);
  std::ostringstream r;
  r << "RK4 error ratio " << ratio;
  o.expect(ratio >= 12 && ratio <= 20, r.str());
  o.detail << " (" << r.str() << ")";
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 three-cell field: step-4 graph and generating-assignment multigraph", 1, small_fields},
      {"2 four-cell field: step 2/3/4 structure and ODE-equivalence", 1, four_cells},
      {"3 six-cell case study: theta, classes, sigma, synchrony counts", 30, six_cells},
      {"4 six-cell ring: balanced lattice, chimera, automorphisms, orbits", 5, ring_synchrony},
      {"5 oscillator ring: flow invariance of all 29 patterns", 120, flow_invariance},
      {"6 property suites", 120, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.ok = false;
      o.detail << " [over the " << c.limit_s << " s limit]";
    }
    if (!o.ok) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.name << "  (" << timing << ")" << o.detail.str()
              << "\n";
  }
  return failed == 0 ? 0 : 1;
}
