#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace ringage {

/// Declarative description of the connectivity radius f(n).
namespace radius {

struct Constant {
    std::int64_t d;
};
/// f(n) = floor(n^alpha), 0 < alpha < 1.
struct Power {
    double alpha;
};
struct FullyConnected {};
/// f(n) = floor(n / ln^2 n).
struct NOverLogSq {};
/// A fixed radius that must already be valid for the n it is applied to.
struct Explicit {
    std::int64_t value;
};

}  // namespace radius

using NeighborFunction = std::variant<radius::Constant, radius::Power, radius::FullyConnected,
                                      radius::NOverLogSq, radius::Explicit>;

/// Largest admissible radius on an n-ring: floor((n-1)/2).
std::int64_t max_radius(std::int64_t n);

/// Evaluates f(n): floor of the raw value, clamped into [1, floor((n-1)/2)].
/// Throws InvalidArgument for n < 3, malformed parameters, or an Explicit
/// value outside the admissible range.
std::int64_t eval_f(const NeighborFunction& spec, std::int64_t n);

/// Short human-readable form, e.g. "power(0.5)".
std::string describe(const NeighborFunction& spec);

}  // namespace ringage
