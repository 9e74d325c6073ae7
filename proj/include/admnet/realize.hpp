#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "admnet/network.hpp"
#include "admnet/vector_field.hpp"

namespace admnet {

/// One input slot of a generating function: a block of `dim` variables that
/// is fed by the state of cell `tail`.
struct GeneratorSlot {
  int tail = 0;
  int dim = 1;
};

/// Generating function of one cell, in local variables: first the cell's own
/// coordinates, then each slot's block in order.
struct CellGenerator {
  int own_dim = 1;
  std::vector<GeneratorSlot> slots;
  std::vector<Polynomial> components;  // one per own coordinate
  std::vector<std::string> names;      // local variable names (may be empty)

  int nvars() const;
  /// Local index of the first variable of slot s.
  int offset(int slot) const;
};

/// User-supplied generating functions, one per cell (0-based tails).
struct GeneratingAssignment {
  std::vector<CellGenerator> cells;
};

/// Step 1 realization together with the generators it was read from.
/// cell_class is the field's ~C, split where cells without inputs carry
/// different dynamics.
struct RealizationInput {
  VectorFieldSpec field;
  std::vector<CellGenerator> generators;
  Partition cell_class;
  Network g1;
};

/// Per-cell slot blocks (maximal swap-invariant groups) and the collections
/// of setwise interchangeable blocks.
struct CellInterchange {
  std::vector<std::vector<int>> blocks;       // slot indices, ordered by first slot
  std::vector<std::vector<int>> collections;  // block indices
  std::vector<int> collection_of;             // block -> collection
};

struct InterchangeStructure {
  std::vector<CellInterchange> cells;
};

/// Input classes of step 3. reference[q] is the lowest cell of class q;
/// matching[c][j] is the reference block matched to block j of c (identity
/// on reference cells).
struct InputClasses {
  Partition classes;
  std::vector<int> reference;
  std::vector<std::vector<int>> matching;
  /// First type id of class q in step-3 numbering.
  std::vector<int> type_offset;
};

struct Step4Variant {
  Network network;
  bool optimized = false;
};

Network step1_simple(const VectorFieldSpec& f);

/// Multigraph G1 with one edge (own type) per slot. Throws ValidationError
/// naming the cell when substitution does not reproduce f_c, or when a slot
/// is ignored by its generator.
Network validate_generating_assignment(const VectorFieldSpec& f, const GeneratingAssignment& a);

RealizationInput prepare_realization(const VectorFieldSpec& f,
                                     const std::optional<GeneratingAssignment>& a = std::nullopt);

InterchangeStructure step2_interchange_blocks(const RealizationInput& in);

InputClasses step3_input_classes(const RealizationInput& in, const InterchangeStructure& s);

/// Product over input classes Q and collections t of (u_t!)^(|Q|-1).
std::uint64_t theta(const RealizationInput& in, const InterchangeStructure& s,
                    const InputClasses& q);
std::uint64_t theta(const VectorFieldSpec& f);

/// All step-3 networks in lexicographic order of the per-cell matchings.
/// Throws BoundExceeded when theta exceeds the enumeration cap.
std::vector<Network> step3_enumerate(const RealizationInput& in, const InterchangeStructure& s,
                                     const InputClasses& q);
std::vector<Network> step3_enumerate(const VectorFieldSpec& f);

/// Legal coarsenings of the edge types of g3, trivial one first. Merged types
/// never share an input set, have ~C-equivalent heads and tails, and the
/// input classes stay as in g3. `optimized` marks maximal coarsenings.
std::vector<Step4Variant> step4_variants(const Network& g3);

/// Merges the types of each interchange collection; g3 must be a step-3
/// network of the same input.
Network bar_graph(const Network& g3, const InterchangeStructure& s, const InputClasses& q);
Network bar_graph(const VectorFieldSpec& f);

/// Domain condition plus equivariance under all type-preserving input
/// bijections, as exact polynomial identities. Without an assignment, g must
/// have no parallel edges or loops.
bool verify_admissible(const Network& g, const VectorFieldSpec& f,
                       const std::optional<GeneratingAssignment>& a = std::nullopt);

/// Cell permutations that commute with f (coordinates moved cellwise).
bool commutes_with(const VectorFieldSpec& f, const std::vector<int>& cell_map);

/// |{gamma in Aut(bar graph) : gamma commutes with f}| divided by the number
/// of those that are also automorphisms of g.
std::uint64_t sigma_size(const Network& g, const VectorFieldSpec& f,
                         const std::optional<GeneratingAssignment>& a = std::nullopt);

struct IsoClassReport {
  Network network;
  std::uint64_t sigma = 1;
  bool optimized = false;
  bool step3 = false;
  int synchrony_count = 0;  // balanced partitions other than top and bottom
  int multiplicity = 0;     // step-3 networks in this class
};

struct RealizationReport {
  std::uint64_t theta = 1;
  int step3_count = 0;
  int step3_classes = 0;
  std::vector<IsoClassReport> iso_classes;
  std::vector<std::vector<int>> ode_classes;
  Network bar_graph;
};

/// Full pipeline. Step-3 networks come first (in enumeration order of their
/// first occurrence), followed by optimized step-4 graphs not isomorphic to
/// any earlier entry. Throws Error if an emitted network fails
/// verify_admissible.
RealizationReport realize_all(const VectorFieldSpec& f,
                              const std::optional<GeneratingAssignment>& a = std::nullopt);

}  // namespace admnet
