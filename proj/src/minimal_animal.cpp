#include "ringage/minimal_animal.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "ringage/error.hpp"

namespace ringage {

namespace {

using Best = std::pair<std::int64_t, std::uint64_t>;  // (incoming count, mask); lexicographic min
constexpr Best kNoBest{std::numeric_limits<std::int64_t>::max(), 0};

void check_cap(const RingTopology& topo, int cap) {
    if (topo.n() > cap)
        throw CapacityExceeded(fmt::format(
            "exhaustive animal search refused: n = {} exceeds cap {} (2^n subsets)", topo.n(), cap));
    if (cap > 30) throw CapacityExceeded(fmt::format("animal search cap {} too large", cap));
}

std::uint64_t boundary(const RingTopology& topo, std::uint64_t s) {
    std::uint64_t out = 0;
    for (std::uint64_t b = s; b != 0; b &= b - 1) out |= topo.neighbors(std::countr_zero(b)).bits();
    return out & ~s;
}

AnimalResult to_result(std::int64_t size, const Best& best, std::int64_t examined) {
    return AnimalResult{size, best.first, NodeSet(best.second), examined};
}

}  // namespace

AnimalResult brute_force_min_incoming(const RingTopology& topo, std::int64_t j, int cap) {
    check_cap(topo, cap);
    if (j < 1 || j > topo.n() - 1)
        throw InvalidArgument(fmt::format("set size {} outside [1, {}]", j, topo.n() - 1));
    return min_incoming_by_size(topo, cap)[static_cast<std::size_t>(j - 1)];
}

std::vector<AnimalResult> min_incoming_by_size(const RingTopology& topo, int cap) {
    check_cap(topo, cap);
    const int n = static_cast<int>(topo.n());
    std::vector<AnimalResult> out;
    out.reserve(static_cast<std::size_t>(n - 1));

    std::vector<std::uint64_t> frontier;
    for (int i = 0; i < n; ++i) frontier.push_back(std::uint64_t{1} << i);

    for (int size = 1; size <= n - 1; ++size) {
        const auto count = static_cast<std::int64_t>(frontier.size());
        Best best = kNoBest;
        std::vector<std::uint64_t> next;

#pragma omp parallel
        {
            Best local = kNoBest;
            std::vector<std::uint64_t> grown;
#pragma omp for schedule(static) nowait
            for (std::int64_t k = 0; k < count; ++k) {
                const std::uint64_t s = frontier[static_cast<std::size_t>(k)];
                local = std::min(local, Best{topo.incoming_edge_count(NodeSet(s)).count, s});
                if (size + 1 <= n - 1)
                    for (std::uint64_t b = boundary(topo, s); b != 0; b &= b - 1)
                        grown.push_back(s | (b & (~b + 1)));
            }
#pragma omp critical(ringage_animal_merge)
            {
                best = std::min(best, local);
                next.insert(next.end(), grown.begin(), grown.end());
            }
        }

        out.push_back(to_result(size, best, count));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::vector<AnimalResult> min_incoming_all_subsets(const RingTopology& topo, int cap) {
    check_cap(topo, cap);
    const int n = static_cast<int>(topo.n());
    const auto full = static_cast<std::int64_t>(NodeSet::full(n).bits());
    std::vector<Best> best(static_cast<std::size_t>(n), kNoBest);
    std::vector<std::int64_t> examined(static_cast<std::size_t>(n), 0);

#pragma omp parallel
    {
        std::vector<Best> local(static_cast<std::size_t>(n), kNoBest);
        std::vector<std::int64_t> seen(static_cast<std::size_t>(n), 0);
#pragma omp for schedule(static) nowait
        for (std::int64_t m = 1; m < full; ++m) {
            const NodeSet s(static_cast<std::uint64_t>(m));
            const auto k = static_cast<std::size_t>(s.size());
            local[k] = std::min(local[k], Best{topo.incoming_edge_count(s).count, s.bits()});
            ++seen[k];
        }
#pragma omp critical(ringage_animal_all_merge)
        for (std::size_t k = 0; k < local.size(); ++k) {
            best[k] = std::min(best[k], local[k]);
            examined[k] += seen[k];
        }
    }

    std::vector<AnimalResult> out;
    for (int size = 1; size <= n - 1; ++size)
        out.push_back(to_result(size, best[static_cast<std::size_t>(size)], examined[static_cast<std::size_t>(size)]));
    return out;
}

namespace serial {

std::vector<AnimalResult> min_incoming_by_size(const RingTopology& topo, int cap) {
    check_cap(topo, cap);
    const int n = static_cast<int>(topo.n());
    const std::uint64_t full = NodeSet::full(n).bits();
    std::vector<Best> best(static_cast<std::size_t>(n), kNoBest);
    std::vector<std::int64_t> examined(static_cast<std::size_t>(n), 0);
    for (std::uint64_t m = 1; m < full; ++m) {
        const NodeSet s(m);
        if (!topo.connected(s)) continue;
        const auto k = static_cast<std::size_t>(s.size());
        best[k] = std::min(best[k], Best{topo.incoming_edge_count(s).count, m});
        ++examined[k];
    }
    std::vector<AnimalResult> out;
    for (int size = 1; size <= n - 1; ++size)
        out.push_back(to_result(size, best[static_cast<std::size_t>(size)], examined[static_cast<std::size_t>(size)]));
    return out;
}

}  // namespace serial

}  // namespace ringage
