#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "admnet/partition.hpp"

namespace admnet {

/// Directed edge tail -> head of the given type (0-based ids throughout).
struct Edge {
  int tail = 0;
  int head = 0;
  int type = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  int& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  int operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// The multiset I(c) grouped by edge type.
struct InputSignature {
  int cell = 0;
  std::map<int, std::vector<int>> tails_by_type;  // sorted tails
  std::map<int, int> type_counts;

  int valency() const;
};

/// Coupled cell network: cells with a cell-class partition and a list of
/// typed directed edges. Parallel edges are distinct list entries.
///
/// Invariants (checked by build): edges of one type have ~C-equivalent heads
/// and ~C-equivalent tails; type ids are exactly 0..k-1, each used.
class Network {
 public:
  /// Empty network with no cells.
  Network() = default;

  static Network build(int n_cells, Partition cell_class, std::vector<Edge> edges);
  /// Convenience: every cell in one class.
  static Network build(int n_cells, std::vector<Edge> edges);

  int num_cells() const { return n_; }
  int num_types() const { return num_types_; }
  const Partition& cell_class() const { return cell_class_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// (i, j) = number of edges j -> i of the given type.
  const IntMatrix& adjacency(int type) const;
  /// Sum over all types.
  IntMatrix total_adjacency() const;

  InputSignature input_signature(int cell) const;
  bool input_equivalent(int c, int d) const;
  /// Input-equivalence classes; blocks ordered by minimum cell.
  Partition input_classes() const;

  /// No parallel edges and no loops.
  bool is_simple() const;
  /// All cells input equivalent.
  bool is_homogeneous() const;

  /// Same cells, same edge list, types renamed through `type_map`
  /// (old id -> new id). Used for merges; new ids must be contiguous.
  Network with_types(const std::vector<int>& type_map) const;

  /// Image under a cell bijection: cell c becomes cell_map[c].
  Network relabeled(const std::vector<int>& cell_map) const;

 private:
  int n_ = 0;
  int num_types_ = 0;
  Partition cell_class_;
  std::vector<Edge> edges_;
  std::vector<IntMatrix> adjacency_;
};

/// Witness of an isomorphism g1 -> g2: cell c of g1 goes to cell_map[c] of g2,
/// type t of g1 to type_map[t] of g2.
struct Isomorphism {
  std::vector<int> cell_map;
  std::vector<int> type_map;

  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

/// Exhaustive backtracking with invariant pruning. Types may be permuted.
/// Returns the witness with lexicographically smallest cell_map.
std::optional<Isomorphism> is_isomorphic(const Network& g1, const Network& g2);

/// All automorphisms (one type permutation per cell permutation; types with
/// identical adjacency matrices are paired order-preservingly). Identity first.
/// Throws BoundExceeded when num_cells exceeds the permutation bound.
std::vector<Isomorphism> automorphism_group(const Network& g);

/// Distinct cell parts of automorphism_group.
std::vector<std::vector<int>> automorphism_cell_maps(const Network& g);

/// Equal keys iff the networks are isomorphic. Throws BoundExceeded past the
/// permutation bound.
std::string canonical_key(const Network& g);

/// Combinatorial balance test: p respects ~C and, for every type, cells in a
/// block receive the same number of edges from each block.
bool is_equitable(const Network& g, const Partition& p);

/// Network on the blocks of a balanced partition; the representative (lowest
/// cell) of each block supplies its inputs. Throws ValidationError if p is not
/// balanced.
Network quotient_network(const Network& g, const Partition& p);

}  // namespace admnet
