#pragma once

#include <optional>
#include <span>
#include <vector>

#include "admnet/linalg.hpp"
#include "admnet/network.hpp"

namespace admnet {

/// Spanning set of the linear admissible maps of a network: D_Q for each
/// input class Q and D_Q * A^t for each type t (zero products dropped).
struct LinearBasis {
  int n = 0;
  std::vector<RationalMatrix> generators;
};

/// Cell-level basis. With `dims`, every cell c is expanded to a dims[c]
/// identity block.
LinearBasis linear_admissible_basis(const Network& g, std::span<const int> dims = {});

int span_dimension(const LinearBasis& b);

/// Exact equality of the two matrix spans. Throws on dimension mismatch.
bool span_equal(const LinearBasis& a, const LinearBasis& b);

/// Cell bijection gamma with L(g1) = { M[gamma(i)][gamma(j)] : M in L(g2) },
/// lexicographically smallest, or empty. Homogeneous simple pairs are decided
/// by isomorphism. Throws BoundExceeded past the permutation bound.
std::optional<std::vector<int>> ode_equivalent(const Network& g1, const Network& g2);

}  // namespace admnet
