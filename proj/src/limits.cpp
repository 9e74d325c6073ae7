#include "admnet/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace admnet {
namespace {

int env_bound(int fallback) {
  const char* raw = std::getenv("ADMNET_MAX_CELLS");
  if (raw == nullptr) return fallback;
  int value = 0;
  auto [ptr, ec] = std::from_chars(raw, raw + std::strlen(raw), value);
  if (ec != std::errc{} || value <= 0) return fallback;
  return value;
}

}  // namespace

int permutation_bound() { return env_bound(kDefaultPermutationBound); }
int partition_bound() { return env_bound(kDefaultPartitionBound); }

}  // namespace admnet
