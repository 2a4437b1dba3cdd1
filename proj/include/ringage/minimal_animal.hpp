#pragma once

#include <cstdint>
#include <vector>

#include "ringage/ring_topology.hpp"

namespace ringage {

/// Exhaustive search refuses rings larger than this unless told otherwise.
inline constexpr int kDefaultAnimalCap = 14;

struct AnimalResult {
    std::int64_t set_size = 0;
    std::int64_t min_incoming = 0;
    NodeSet witness;  // numerically smallest minimizing set
    std::int64_t sets_examined = 0;
};

/// Minimum |E(S)| over connected subsets of size j, by enumeration.
/// Requires n <= cap and 1 <= j <= n-1; throws CapacityExceeded above the cap.
AnimalResult brute_force_min_incoming(const RingTopology& topo, std::int64_t j, int cap = kDefaultAnimalCap);

/// Same search for every j = 1..n-1 at once; element k holds size k+1.
/// Connected sets are grown level by level from singletons by adding one
/// adjacent node at a time, deduplicated through a 2^n visited bitmap.
std::vector<AnimalResult> min_incoming_by_size(const RingTopology& topo, int cap = kDefaultAnimalCap);

/// Minimum |E(S)| per size over *all* subsets, connected or not.
/// OpenMP scan of the 2^n masks with a per-size min reduction.
std::vector<AnimalResult> min_incoming_all_subsets(const RingTopology& topo, int cap = kDefaultAnimalCap);

namespace serial {

/// Reference for min_incoming_by_size: filters all 2^n masks by connectivity
/// in a plain loop instead of growing connected sets.
std::vector<AnimalResult> min_incoming_by_size(const RingTopology& topo, int cap = kDefaultAnimalCap);

}  // namespace serial

}  // namespace ringage
