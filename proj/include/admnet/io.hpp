#pragma once

#include <string>

#include <json.hpp>

#include "admnet/network.hpp"
#include "admnet/realize.hpp"
#include "admnet/synchrony.hpp"

namespace admnet {

using json = nlohmann::json;

// Cells are 1-based in every external format, edge types 0-based.

json network_to_json(const Network& g);
Network network_from_json(const json& j);

json partition_to_json(const Partition& p);
/// Cells missing from every block become singletons.
Partition partition_from_json(int n, const json& j);

json lattice_to_json(const SynchronyLattice& lattice);
SynchronyLattice lattice_from_json(int n, const json& j);

json report_to_json(const RealizationReport& r);
RealizationReport report_from_json(const json& j);

/// {"cells": [{"cell": 1, "own": ["x"], "inputs": [{"vars": ["y1"], "tail": 1}, ...],
///             "generator": ["x + y1*y2*y3"]}, ...]}
GeneratingAssignment assignment_from_json(const json& j);
json assignment_to_json(const GeneratingAssignment& a);

/// Structural equality: cells, classes and the ordered edge list.
bool same_network(const Network& a, const Network& b);

/// One line style per edge type, one node shape per cell class.
std::string export_dot(const Network& g, const std::string& name = "G");

std::string read_file(const std::string& path);
json load_json(const std::string& path);

}  // namespace admnet
