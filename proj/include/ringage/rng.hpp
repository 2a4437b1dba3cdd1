#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ringage {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the random stream for one replication of one sweep cell.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t replication) {
    const std::uint64_t c = splitmix64(master + 0x9E3779B97F4A7C15ULL * (cell + 1));
    return splitmix64(c + 0xD1B54A32D192ED03ULL * (replication + 1));
}

inline constexpr std::string_view kSeedSplittingRule =
    "mt19937_64 seeded with splitmix64(splitmix64(master + 0x9E3779B97F4A7C15*(cell+1)) + "
    "0xD1B54A32D192ED03*(replication+1))";

using Engine = std::mt19937_64;

}  // namespace ringage
