#include "admnet/io.hpp"

#include <fstream>
#include <sstream>

#include "admnet/error.hpp"

namespace admnet {

namespace {

int cell_index(const json& v, int n) {
  if (!v.is_number_integer()) throw ParseError("cell ids must be integers", 0);
  const int c = v.get<int>();
  if (c < 1 || c > n) throw ParseError("cell id " + std::to_string(c) + " out of range", 0);
  return c - 1;
}

std::vector<std::vector<int>> blocks_from_json(int n, const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of blocks", 0);
  std::vector<std::vector<int>> blocks;
  for (const auto& b : j) {
    if (!b.is_array()) throw ParseError("expected a block (array of cell ids)", 0);
    std::vector<int> block;
    for (const auto& c : b) block.push_back(cell_index(c, n));
    blocks.push_back(std::move(block));
  }
  std::vector<char> seen(n, 0);
  for (const auto& b : blocks) {
    for (int c : b) seen[c] = 1;
  }
  for (int c = 0; c < n; ++c) {
    if (!seen[c]) blocks.push_back({c});
  }
  return blocks;
}

}  // namespace

json network_to_json(const Network& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"tail", e.tail + 1}, {"head", e.head + 1}, {"type", e.type}});
  }
  return {{"cells", g.num_cells()},
          {"classes", partition_to_json(g.cell_class())},
          {"edges", std::move(edges)}};
}

Network network_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("network must be a JSON object", 0);
    const int n = j.at("cells").get<int>();
    if (n <= 0) throw ParseError("'cells' must be positive", 0);
    Partition classes = j.contains("classes") ? partition_from_json(n, j.at("classes"))
                                              : Partition::whole(n);
    std::vector<Edge> edges;
    for (const auto& e : j.value("edges", json::array())) {
      edges.push_back({cell_index(e.at("tail"), n), cell_index(e.at("head"), n), e.value("type", 0)});
    }
    return Network::build(n, std::move(classes), std::move(edges));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed network JSON: ") + e.what(), 0);
  }
}

json partition_to_json(const Partition& p) {
  json out = json::array();
  for (const auto& b : p.blocks()) {
    json block = json::array();
    for (int c : b) block.push_back(c + 1);
    out.push_back(std::move(block));
  }
  return out;
}

Partition partition_from_json(int n, const json& j) { return Partition(n, blocks_from_json(n, j)); }

json lattice_to_json(const SynchronyLattice& lattice) {
  json patterns = json::array();
  for (const auto& p : lattice.patterns) patterns.push_back(partition_to_json(p));
  json order = json::array();
  for (auto [i, k] : lattice.order) order.push_back({i, k});
  return {{"patterns", std::move(patterns)}, {"order", std::move(order)}, {"chimera", lattice.chimera}};
}

SynchronyLattice lattice_from_json(int n, const json& j) {
  try {
    SynchronyLattice lattice;
    for (const auto& p : j.at("patterns")) lattice.patterns.push_back(partition_from_json(n, p));
    for (const auto& pair : j.at("order")) lattice.order.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    lattice.chimera = j.value("chimera", std::vector<int>{});
    return lattice;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed lattice JSON: ") + e.what(), 0);
  }
}

json report_to_json(const RealizationReport& r) {
  json classes = json::array();
  for (const auto& c : r.iso_classes) {
    classes.push_back({{"network", network_to_json(c.network)},
                       {"sigma", c.sigma},
                       {"optimized", c.optimized},
                       {"step3", c.step3},
                       {"multiplicity", c.multiplicity},
                       {"synchrony_count", c.synchrony_count}});
  }
  return {{"theta", r.theta},
          {"step3_count", r.step3_count},
          {"step3_classes", r.step3_classes},
          {"iso_classes", std::move(classes)},
          {"ode_classes", r.ode_classes},
          {"bar_graph", network_to_json(r.bar_graph)}};
}

RealizationReport report_from_json(const json& j) {
  try {
    RealizationReport r;
    r.theta = j.at("theta").get<std::uint64_t>();
    r.step3_count = j.at("step3_count").get<int>();
    r.step3_classes = j.at("step3_classes").get<int>();
    for (const auto& c : j.at("iso_classes")) {
      IsoClassReport ic;
      ic.network = network_from_json(c.at("network"));
      ic.sigma = c.at("sigma").get<std::uint64_t>();
      ic.optimized = c.at("optimized").get<bool>();
      ic.step3 = c.at("step3").get<bool>();
      ic.multiplicity = c.at("multiplicity").get<int>();
      ic.synchrony_count = c.at("synchrony_count").get<int>();
      r.iso_classes.push_back(std::move(ic));
    }
    r.ode_classes = j.at("ode_classes").get<std::vector<std::vector<int>>>();
    r.bar_graph = network_from_json(j.at("bar_graph"));
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what(), 0);
  }
}

GeneratingAssignment assignment_from_json(const json& j) {
  try {
    const auto& cells = j.at("cells");
    const int n = static_cast<int>(cells.size());
    GeneratingAssignment a;
    a.cells.resize(n);
    std::vector<char> seen(n, 0);
    for (const auto& entry : cells) {
      const int c = cell_index(entry.at("cell"), n);
      if (seen[c]) throw ParseError("cell " + std::to_string(c + 1) + " assigned twice", 0);
      seen[c] = 1;
      CellGenerator g;
      g.names = entry.at("own").get<std::vector<std::string>>();
      g.own_dim = static_cast<int>(g.names.size());
      for (const auto& in : entry.value("inputs", json::array())) {
        auto vars = in.at("vars").get<std::vector<std::string>>();
        g.slots.push_back({cell_index(in.at("tail"), n), static_cast<int>(vars.size())});
        g.names.insert(g.names.end(), vars.begin(), vars.end());
      }
      for (const auto& text : entry.at("generator")) {
        g.components.push_back(parse_polynomial(text.get<std::string>(), g.names));
      }
      a.cells[c] = std::move(g);
    }
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed assignment JSON: ") + e.what(), 0);
  }
}

json assignment_to_json(const GeneratingAssignment& a) {
  json cells = json::array();
  for (int c = 0; c < static_cast<int>(a.cells.size()); ++c) {
    const auto& g = a.cells[c];
    json own = json::array();
    for (int k = 0; k < g.own_dim; ++k) own.push_back(g.names[k]);
    json inputs = json::array();
    for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
      json vars = json::array();
      for (int k = 0; k < g.slots[s].dim; ++k) vars.push_back(g.names[g.offset(s) + k]);
      inputs.push_back({{"vars", std::move(vars)}, {"tail", g.slots[s].tail + 1}});
    }
    json gen = json::array();
    for (const auto& p : g.components) gen.push_back(to_string(p, g.names));
    cells.push_back({{"cell", c + 1}, {"own", std::move(own)}, {"inputs", std::move(inputs)},
                     {"generator", std::move(gen)}});
  }
  return {{"cells", std::move(cells)}};
}

bool same_network(const Network& a, const Network& b) {
  return a.num_cells() == b.num_cells() && a.num_types() == b.num_types() &&
         a.cell_class() == b.cell_class() && a.edges() == b.edges();
}

std::string export_dot(const Network& g, const std::string& name) {
  static const char* const kStyles[] = {"solid", "dashed", "dotted", "bold"};
  static const char* const kColors[] = {"black", "blue", "red", "darkgreen", "orange", "purple"};
  static const char* const kShapes[] = {"circle", "box", "diamond", "triangle", "hexagon", "octagon"};
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (int c = 0; c < g.num_cells(); ++c) {
    out << "  " << c + 1 << " [shape=" << kShapes[g.cell_class().block_of(c) % 6] << "];\n";
  }
  for (const auto& e : g.edges()) {
    const int t = e.type;
    out << "  " << e.tail + 1 << " -> " << e.head + 1 << " [style=" << kStyles[t % 4]
        << ", color=" << kColors[(t / 4) % 6] << ", label=\"" << t << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what(), e.byte);
  }
}

}  // namespace admnet
