#pragma once

#include <optional>
#include <string>
#include <vector>

#include "admnet/partition.hpp"
#include "admnet/polynomial.hpp"

namespace admnet {

/// A polynomial vector field on R^n together with a cellization: cell c owns
/// the coordinates cells[c] (0-based), and components[i] is the i-th
/// coordinate of f.
struct VectorFieldSpec {
  std::vector<std::string> var_names;
  std::vector<std::vector<int>> cells;
  std::vector<Polynomial> components;
  Partition cell_class;

  /// Validates the cellization and the cell classes. When `cell_class` is
  /// empty the classes are "equal dimension".
  static VectorFieldSpec make(std::vector<std::string> var_names,
                              std::vector<std::vector<int>> cells,
                              std::vector<Polynomial> components,
                              std::optional<Partition> cell_class = std::nullopt);

  /// One scalar cell per coordinate.
  static VectorFieldSpec scalar(std::vector<std::string> var_names,
                                std::vector<Polynomial> components);

  int dimension() const { return static_cast<int>(components.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int cell_dim(int c) const { return static_cast<int>(cells[c].size()); }
  /// Cell owning coordinate i.
  int cell_of(int coordinate) const;
};

/// Field file:
///   vars: x1 x2 x3
///   cells: (x1 x2)(x3)        optional, default one cell per variable
///   classes: (1)(2 3)         optional, 1-based cells, default equal dimension
///   f1 = <expr>               one line per coordinate
/// '#' starts a comment.
VectorFieldSpec parse_field(const std::string& text);
VectorFieldSpec load_field(const std::string& path);

std::string format_field(const VectorFieldSpec& f);

/// Each coordinate of f_c evaluated at the state vector of all coordinates.
std::vector<Rational> evaluate(const VectorFieldSpec& f, std::span<const Rational> x);

}  // namespace admnet
