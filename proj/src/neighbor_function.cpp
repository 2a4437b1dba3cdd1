#include "ringage/neighbor_function.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ringage/error.hpp"

namespace ringage {

namespace {

// pow/log results that should land on an integer can come back one ulp low.
std::int64_t floor_nudged(double x) {
    return static_cast<std::int64_t>(std::floor(x * (1.0 + 1e-12)));
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::int64_t max_radius(std::int64_t n) {
    if (n < 3) throw InvalidArgument(fmt::format("ring needs n >= 3, got {}", n));
    return (n - 1) / 2;
}

std::int64_t eval_f(const NeighborFunction& spec, std::int64_t n) {
    const std::int64_t hi = max_radius(n);
    const auto nd = static_cast<double>(n);
    const std::int64_t raw = std::visit(
        overloaded{
            [](const radius::Constant& c) -> std::int64_t {
                if (c.d < 1) throw InvalidArgument(fmt::format("constant radius must be >= 1, got {}", c.d));
                return c.d;
            },
            [&](const radius::Power& p) -> std::int64_t {
                if (!(p.alpha > 0.0 && p.alpha < 1.0))
                    throw InvalidArgument(fmt::format("power exponent must lie in (0,1), got {}", p.alpha));
                return floor_nudged(std::pow(nd, p.alpha));
            },
            [&](const radius::FullyConnected&) -> std::int64_t { return hi; },
            [&](const radius::NOverLogSq&) -> std::int64_t {
                const double l = std::log(nd);
                return floor_nudged(nd / (l * l));
            },
            [&](const radius::Explicit& e) -> std::int64_t {
                if (e.value < 1 || e.value > hi)
                    throw InvalidArgument(
                        fmt::format("explicit radius {} outside [1, {}] for n = {}", e.value, hi, n));
                return e.value;
            },
        },
        spec);
    return std::clamp<std::int64_t>(raw, 1, hi);
}

std::string describe(const NeighborFunction& spec) {
    return std::visit(overloaded{
                          [](const radius::Constant& c) { return fmt::format("constant({})", c.d); },
                          [](const radius::Power& p) { return fmt::format("power({})", p.alpha); },
                          [](const radius::FullyConnected&) { return std::string("full"); },
                          [](const radius::NOverLogSq&) { return std::string("nlogsq"); },
                          [](const radius::Explicit& e) { return fmt::format("explicit({})", e.value); },
                      },
                      spec);
}

}  // namespace ringage
