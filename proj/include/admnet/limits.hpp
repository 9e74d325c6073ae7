#pragma once

namespace admnet {

// Size bounds for exhaustive searches. ADMNET_MAX_CELLS overrides both.
inline constexpr int kDefaultPermutationBound = 10;
inline constexpr int kDefaultPartitionBound = 12;

int permutation_bound();
int partition_bound();

}  // namespace admnet
