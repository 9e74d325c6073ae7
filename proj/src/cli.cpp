#include "admnet/cli.hpp"

#include <fstream>
#include <random>

#include <CLI11.hpp>

#include "admnet/dynamics.hpp"
#include "admnet/error.hpp"
#include "admnet/io.hpp"
#include "admnet/odeeq.hpp"
#include "admnet/realize.hpp"
#include "admnet/synchrony.hpp"
#include "admnet/vector_field.hpp"

namespace admnet {

namespace {

struct Options {
  std::string field;
  std::vector<std::string> networks;
  std::string assignment;
  std::string format;
  std::string out;
  bool chimera = false;
  double t_end = 50.0;
  double dt = 1e-3;
  std::string params;
  unsigned seed = 1;
  std::string pattern;
  int stride = 10;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw Error("cannot write '" + o.out + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

VectorFieldSpec need_field(const Options& o) {
  if (o.field.empty()) throw UsageError("--field is required");
  return load_field(o.field);
}

std::optional<GeneratingAssignment> maybe_assignment(const Options& o) {
  if (o.assignment.empty()) return std::nullopt;
  return assignment_from_json(load_json(o.assignment));
}

Network network_arg(const Options& o, std::size_t i) {
  if (o.networks.size() <= i) throw UsageError("missing --network argument");
  return network_from_json(load_json(o.networks[i]));
}

void check_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* a : allowed) {
    if (o.format == a) return;
  }
  throw UsageError("format '" + o.format + "' is not available for this command");
}

json cells_json(const std::vector<int>& map) {
  json j = json::array();
  for (int c : map) j.push_back(c + 1);
  return j;
}

void cmd_realize(const Options& o, std::ostream& out) {
  check_format(o, {"json", "dot"});
  auto report = realize_all(need_field(o), maybe_assignment(o));
  if (o.format == "dot") {
    std::string text;
    for (std::size_t i = 0; i < report.iso_classes.size(); ++i) {
      text += export_dot(report.iso_classes[i].network, "G" + std::to_string(i + 1));
    }
    emit(o, text, out);
    return;
  }
  emit(o, dump(report_to_json(report)), out);
}

void cmd_theta(const Options& o, std::ostream& out) {
  check_format(o, {});
  auto f = need_field(o);
  auto in = prepare_realization(f, maybe_assignment(o));
  auto s = step2_interchange_blocks(in);
  emit(o, std::to_string(theta(in, s, step3_input_classes(in, s))) + "\n", out);
}

void cmd_synchrony(const Options& o, std::ostream& out) {
  check_format(o, {"json", "dot"});
  Network g = o.networks.empty() ? bar_graph(need_field(o)) : network_arg(o, 0);
  auto lattice = enumerate_balanced(g);
  if (!o.chimera) lattice.chimera.clear();
  if (o.format == "dot") {
    emit(o, lattice_dot(lattice), out);
    return;
  }
  json j = lattice_to_json(lattice);
  if (!o.chimera) j.erase("chimera");
  emit(o, dump(j), out);
}

void cmd_ode_equiv(const Options& o, std::ostream& out) {
  check_format(o, {"json"});
  if (o.networks.size() != 2) throw UsageError("ode-equiv needs exactly two --network arguments");
  auto w = ode_equivalent(network_arg(o, 0), network_arg(o, 1));
  json j = {{"equivalent", w.has_value()}};
  if (w) j["witness"] = cells_json(*w);
  emit(o, dump(j), out);
}

void cmd_iso(const Options& o, std::ostream& out) {
  check_format(o, {"json"});
  if (o.networks.size() != 2) throw UsageError("iso needs exactly two --network arguments");
  auto w = is_isomorphic(network_arg(o, 0), network_arg(o, 1));
  json j = {{"isomorphic", w.has_value()}};
  if (w) {
    j["cell_map"] = cells_json(w->cell_map);
    j["type_map"] = w->type_map;
  }
  emit(o, dump(j), out);
}

void cmd_aut(const Options& o, std::ostream& out) {
  check_format(o, {"json"});
  auto group = automorphism_group(network_arg(o, 0));
  json all = json::array();
  for (const auto& a : group) all.push_back({{"cell_map", cells_json(a.cell_map)}, {"type_map", a.type_map}});
  emit(o, dump({{"order", group.size()}, {"automorphisms", std::move(all)}}), out);
}

void cmd_simulate(const Options& o, std::ostream& out) {
  check_format(o, {"csv"});
  if (!o.field.empty() && !o.params.empty()) throw UsageError("--params applies to the built-in oscillator ring only");
  if (o.stride < 1) throw UsageError("--stride must be positive");
  VectorFieldSpec f = o.field.empty() ? vdp_network_field(parse_vdp_params(o.params)) : load_field(o.field);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x0(f.dimension());
  for (double& v : x0) v = dist(rng);
  std::vector<int> dims;
  for (int c = 0; c < f.num_cells(); ++c) dims.push_back(f.cell_dim(c));
  if (!o.pattern.empty()) {
    json blocks = json::parse(o.pattern, nullptr, false);
    if (blocks.is_discarded()) throw UsageError("--pattern is not valid JSON");
    Partition p = partition_from_json(f.num_cells(), blocks);
    x0 = project_polydiagonal(x0, p, dims);
  }
  auto traj = integrate_rk4(f, x0, o.t_end, o.dt, o.stride);
  emit(o, trajectory_csv(traj, f.var_names), out);
}

void cmd_export(const Options& o, std::ostream& out) {
  check_format(o, {"json", "dot"});
  Network g = o.networks.empty() ? step1_simple(need_field(o)) : network_arg(o, 0);
  if (o.format == "json") {
    emit(o, dump(network_to_json(g)), out);
  } else {
    emit(o, export_dot(g), out);
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"admnet: admissible coupled cell networks of polynomial vector fields"};
  app.require_subcommand(1);
  Options o;
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json | dot | csv");
    sub->add_option("--out", o.out, "write to PATH instead of stdout");
  };
  auto* realize = app.add_subcommand("realize", "run the realization pipeline on a field");
  realize->add_option("--field", o.field)->required();
  realize->add_option("--assignment", o.assignment, "generating assignment JSON");
  add_io(realize);
  auto* th = app.add_subcommand("theta", "number of step-3 edge-class assignments");
  th->add_option("--field", o.field)->required();
  th->add_option("--assignment", o.assignment);
  add_io(th);
  auto* sync = app.add_subcommand("synchrony", "balanced partitions of a network");
  sync->add_option("--network", o.networks);
  sync->add_option("--field", o.field, "use the merged-collection graph of a field");
  sync->add_flag("--chimera", o.chimera, "flag chimera patterns");
  add_io(sync);
  auto* ode = app.add_subcommand("ode-equiv", "ODE-equivalence of two networks");
  ode->add_option("--network", o.networks)->required();
  add_io(ode);
  auto* iso = app.add_subcommand("iso", "isomorphism of two networks");
  iso->add_option("--network", o.networks)->required();
  add_io(iso);
  auto* aut = app.add_subcommand("aut", "automorphism group of a network");
  aut->add_option("--network", o.networks)->required();
  add_io(aut);
  auto* sim = app.add_subcommand("simulate", "integrate a field (default: oscillator ring)");
  sim->add_option("--field", o.field);
  sim->add_option("--params", o.params, "k=v,... for the oscillator ring");
  sim->add_option("--t-end", o.t_end);
  sim->add_option("--dt", o.dt);
  sim->add_option("--seed", o.seed, "seed for the random initial state");
  sim->add_option("--pattern", o.pattern, "start on a polydiagonal, e.g. [[1,2,4,5],[3],[6]]");
  sim->add_option("--stride", o.stride, "record every k-th step");
  add_io(sim);
  auto* exp = app.add_subcommand("export", "print a network (or a field's step-1 graph)");
  exp->add_option("--network", o.networks);
  exp->add_option("--field", o.field);
  add_io(exp);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (realize->parsed()) cmd_realize(o, out);
    else if (th->parsed()) cmd_theta(o, out);
    else if (sync->parsed()) cmd_synchrony(o, out);
    else if (ode->parsed()) cmd_ode_equiv(o, out);
    else if (iso->parsed()) cmd_iso(o, out);
    else if (aut->parsed()) cmd_aut(o, out);
    else if (sim->parsed()) cmd_simulate(o, out);
    else if (exp->parsed()) cmd_export(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace admnet
