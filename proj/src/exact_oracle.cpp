#include "ringage/exact_oracle.hpp"

#include <bit>
#include <utility>

#include <fmt/format.h>

#include "ringage/error.hpp"

namespace ringage {

namespace {

void check_inputs(std::int64_t n, std::int64_t f, const Rates& rates, int cap) {
    if (n > cap)
        throw CapacityExceeded(fmt::format("exact solve refused: n = {} exceeds cap {} (2^n subsets)", n, cap));
    if (cap > 26) throw CapacityExceeded(fmt::format("exact solve cap {} too large", cap));
    rates.validate();
    RingTopology(n, f);  // validates n and f
}

struct SetEquation {
    std::vector<std::uint64_t> neighbor_masks;
    double lambda_e;
    double source_per_node;  // lambda / n
    double gossip_per_edge;  // lambda / 2f
    std::uint64_t full;

    SetEquation(const RingTopology& topo, const Rates& rates)
        : lambda_e(rates.lambda_e),
          source_per_node(rates.lambda / static_cast<double>(topo.n())),
          gossip_per_edge(rates.lambda / static_cast<double>(2 * topo.f())),
          full(NodeSet::full(static_cast<int>(topo.n())).bits()) {
        for (int i = 0; i < topo.n(); ++i) neighbor_masks.push_back(topo.neighbors(i).bits());
    }

    double solve(std::uint64_t s, const std::vector<double>& v) const {
        double num = lambda_e;
        double den = source_per_node * std::popcount(s);
        for (std::uint64_t out = full & ~s; out != 0; out &= out - 1) {
            const int i = std::countr_zero(out);
            const int edges = std::popcount(neighbor_masks[static_cast<std::size_t>(i)] & s);
            if (edges == 0) continue;
            const double rate = gossip_per_edge * edges;
            num += rate * v[static_cast<std::size_t>(s | (std::uint64_t{1} << i))];
            den += rate;
        }
        return num / den;
    }
};

}  // namespace

ExactSolution::ExactSolution(std::int64_t n, std::int64_t f, Rates rates, std::vector<double> table)
    : n_(n), f_(f), rates_(rates), table_(std::move(table)) {}

double ExactSolution::value(NodeSet s) const {
    if (s.empty()) throw InvalidArgument("version age of the empty set is undefined");
    if (s.bits() >= table_.size()) throw InvalidArgument("node set has members outside the ring");
    return table_[static_cast<std::size_t>(s.bits())];
}

ExactSolution solve_exact(std::int64_t n, std::int64_t f, const Rates& rates, int cap) {
    check_inputs(n, f, rates, cap);
    const RingTopology topo(n, f);
    const SetEquation eq(topo, rates);
    const int nodes = static_cast<int>(n);
    std::vector<double> v(std::size_t{1} << nodes, 0.0);

    // Bucket masks by popcount once.
    std::vector<std::vector<std::uint64_t>> levels(static_cast<std::size_t>(nodes + 1));
    for (std::uint64_t m = 1; m <= eq.full; ++m) levels[static_cast<std::size_t>(std::popcount(m))].push_back(m);

    for (int size = nodes; size >= 1; --size) {
        const auto& level = levels[static_cast<std::size_t>(size)];
        const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t s = level[static_cast<std::size_t>(k)];
            v[static_cast<std::size_t>(s)] = eq.solve(s, v);
        }
    }
    return ExactSolution(n, f, rates, std::move(v));
}

double exact_v1(std::int64_t n, std::int64_t f, const Rates& rates, int cap) {
    return solve_exact(n, f, rates, cap).v1();
}

namespace serial {

ExactSolution solve_exact(std::int64_t n, std::int64_t f, const Rates& rates, int cap) {
    check_inputs(n, f, rates, cap);
    const RingTopology topo(n, f);
    const SetEquation eq(topo, rates);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (std::uint64_t m = eq.full; m >= 1; --m) v[static_cast<std::size_t>(m)] = eq.solve(m, v);
    return ExactSolution(n, f, rates, std::move(v));
}

}  // namespace serial

}  // namespace ringage
