#pragma once

#include <cstdint>
#include <vector>

#include "ringage/age_bounds.hpp"
#include "ringage/ring_topology.hpp"

namespace ringage {

inline constexpr int kDefaultExactCap = 16;

/// Limiting average version age v_S of every non-empty node subset of a
/// small ring, solved from the set recursion
///   v_S = (lambda_e + sum_i lambda_i(S) v_{S+i}) / (lambda_0(S) + sum_i lambda_i(S)).
class ExactSolution {
public:
    ExactSolution(std::int64_t n, std::int64_t f, Rates rates, std::vector<double> table);

    std::int64_t n() const { return n_; }
    std::int64_t f() const { return f_; }
    const Rates& rates() const { return rates_; }

    /// v_S; throws for the empty set or members outside the ring.
    double value(NodeSet s) const;
    /// Age of a single node (all singletons agree by rotation).
    double v1() const { return value(NodeSet(1)); }
    /// Dense table indexed by bitmask; entry 0 is unused.
    const std::vector<double>& table() const { return table_; }

private:
    std::int64_t n_;
    std::int64_t f_;
    Rates rates_;
    std::vector<double> table_;
};

/// Evaluates all 2^n - 1 subsets, grouped by popcount in descending order.
/// Each level is an OpenMP parallel loop; levels are sequential.
ExactSolution solve_exact(std::int64_t n, std::int64_t f, const Rates& rates, int cap = kDefaultExactCap);

double exact_v1(std::int64_t n, std::int64_t f, const Rates& rates, int cap = kDefaultExactCap);

namespace serial {

/// Reference solver: masks in plain descending numeric order (S+i > S as an
/// integer, so every dependency is already solved).
ExactSolution solve_exact(std::int64_t n, std::int64_t f, const Rates& rates, int cap = kDefaultExactCap);

}  // namespace serial

}  // namespace ringage
