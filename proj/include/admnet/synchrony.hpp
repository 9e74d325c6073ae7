#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "admnet/linalg.hpp"
#include "admnet/network.hpp"
#include "admnet/partition.hpp"

namespace admnet {

/// Balanced partitions of a network. Patterns are ordered finest first
/// (bottom) and coarsest last; `order` lists every pair (i, j), i != j, with
/// patterns[i] refining patterns[j].
struct SynchronyLattice {
  std::vector<Partition> patterns;
  std::vector<std::pair<int, int>> order;
  std::vector<int> chimera;

  /// Balanced partitions other than top and bottom.
  int nontrivial_count() const;
};

/// Columns span { x : cells in one block carry equal states }. Empty `dims`
/// means scalar cells.
RationalMatrix polydiagonal_basis(const Partition& p, std::span<const int> dims = {});

/// Polydiagonal of p is invariant under every adjacency matrix and p
/// respects the cell classes.
bool is_balanced(const Network& g, const Partition& p);

/// Exhaustive scan over partitions refining the cell classes. Throws
/// BoundExceeded past the partition bound.
SynchronyLattice enumerate_balanced(const Network& g);

/// Orbits of the group generated by cell permutations that must be
/// automorphisms of g. Throws ValidationError otherwise.
Partition orbit_partition(const Network& g, const std::vector<std::vector<int>>& generators);

/// Some block has two or more cells, some block is a singleton.
bool classify_chimera(const Partition& p);

/// True iff the cell map extends to an automorphism of g (types may move).
bool is_automorphism(const Network& g, std::span<const int> cell_map);

/// Hasse diagram (cover relations) in DOT.
std::string lattice_dot(const SynchronyLattice& lattice);

}  // namespace admnet
