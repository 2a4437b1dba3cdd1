#include "ringage/ring_topology.hpp"

#include <fmt/format.h>

#include "ringage/error.hpp"

namespace ringage {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw ArithmeticOverflow(fmt::format("edge count product {} * {} overflows", a, b));
    return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a, b, &out)) throw ArithmeticOverflow("edge count difference overflows");
    return out;
}

std::uint64_t low_bits(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

NodeSet NodeSet::full(int n) {
    if (n < 0 || n > kMaxNodes) throw InvalidArgument(fmt::format("NodeSet supports n <= 64, got {}", n));
    return NodeSet(low_bits(n));
}

NodeSet NodeSet::arc(int n, int start, int len) {
    if (n < 1 || n > kMaxNodes) throw InvalidArgument(fmt::format("NodeSet supports n <= 64, got {}", n));
    if (len < 0 || len > n) throw InvalidArgument(fmt::format("arc length {} outside [0, {}]", len, n));
    std::uint64_t bits = 0;
    for (int k = 0; k < len; ++k) bits |= std::uint64_t{1} << (((start + k) % n + n) % n);
    return NodeSet(bits);
}

std::vector<int> NodeSet::members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
}

RingTopology::RingTopology(std::int64_t n, std::int64_t f) : n_(n), f_(f) {
    const std::int64_t hi = max_radius(n);
    if (f < 1 || f > hi) throw InvalidArgument(fmt::format("radius {} outside [1, {}] for n = {}", f, hi, n));
    if (n <= NodeSet::kMaxNodes) {
        neighbor_masks_.resize(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            std::uint64_t m = 0;
            for (std::int64_t d = 1; d <= f; ++d) {
                m |= std::uint64_t{1} << ((i + d) % n);
                m |= std::uint64_t{1} << ((i - d + n) % n);
            }
            neighbor_masks_[static_cast<std::size_t>(i)] = m;
        }
    }
}

RingTopology::RingTopology(std::int64_t n, const NeighborFunction& spec) : RingTopology(n, eval_f(spec, n)) {}

void RingTopology::require_small() const {
    if (n_ > NodeSet::kMaxNodes)
        throw InvalidArgument(fmt::format("set operations need n <= 64, ring has n = {}", n_));
}

void RingTopology::require_node(std::int64_t i) const {
    if (i < 0 || i >= n_) throw InvalidArgument(fmt::format("node {} outside [0, {})", i, n_));
}

std::int64_t RingTopology::circular_distance(std::int64_t i, std::int64_t j) const {
    require_node(i);
    require_node(j);
    const std::int64_t d = i > j ? i - j : j - i;
    return std::min(d, n_ - d);
}

bool RingTopology::adjacent(std::int64_t i, std::int64_t j) const {
    const std::int64_t d = circular_distance(i, j);
    return d >= 1 && d <= f_;
}

std::int64_t RingTopology::neighbor_at(std::int64_t i, std::int64_t offset) const {
    require_node(i);
    if (offset == 0 || offset > f_ || offset < -f_)
        throw InvalidArgument(fmt::format("neighbor offset {} outside [-{}, {}] \\ {{0}}", offset, f_, f_));
    return ((i + offset) % n_ + n_) % n_;
}

std::vector<std::int64_t> RingTopology::neighbor_list(std::int64_t i) const {
    require_node(i);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(2 * f_));
    for (std::int64_t d = 1; d <= f_; ++d) out.push_back((i + d) % n_);
    for (std::int64_t d = 1; d <= f_; ++d) out.push_back((i - d + n_) % n_);
    return out;
}

NodeSet RingTopology::neighbors(int i) const {
    require_small();
    require_node(i);
    return NodeSet(neighbor_masks_[static_cast<std::size_t>(i)]);
}

IncomingEdges RingTopology::incoming_edge_count(NodeSet s) const {
    require_small();
    const std::uint64_t all = low_bits(static_cast<int>(n_));
    if (s.empty()) throw InvalidArgument("incoming edge count of the empty set is undefined");
    if ((s.bits() & ~all) != 0) throw InvalidArgument("node set has members outside the ring");
    if (s.bits() == all) return {0, true};
    std::int64_t count = 0;
    for (std::uint64_t out = all & ~s.bits(); out != 0; out &= out - 1) {
        const int i = std::countr_zero(out);
        count += std::popcount(neighbor_masks_[static_cast<std::size_t>(i)] & s.bits());
    }
    return {count, false};
}

std::int64_t RingTopology::incoming_edges_from(NodeSet s, int i) const {
    require_small();
    require_node(i);
    if (s.contains(i)) return 0;
    return std::popcount(neighbor_masks_[static_cast<std::size_t>(i)] & s.bits());
}

std::int64_t RingTopology::inner_edge_count(NodeSet s) const {
    require_small();
    std::int64_t twice = 0;
    for (std::uint64_t in = s.bits(); in != 0; in &= in - 1) {
        const int i = std::countr_zero(in);
        twice += std::popcount(neighbor_masks_[static_cast<std::size_t>(i)] & s.bits());
    }
    return twice / 2;
}

bool RingTopology::connected(NodeSet s) const {
    require_small();
    if (s.empty()) return false;
    std::uint64_t reached = s.bits() & (~s.bits() + 1);  // lowest member
    std::uint64_t frontier = reached;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (std::uint64_t b = frontier; b != 0; b &= b - 1)
            next |= neighbor_masks_[static_cast<std::size_t>(std::countr_zero(b))];
        next &= s.bits() & ~reached;
        reached |= next;
        frontier = next;
    }
    return reached == s.bits();
}

bool RingTopology::contiguous(NodeSet s) const {
    require_small();
    const int n = static_cast<int>(n_);
    const int j = s.size();
    if (j == 0) return false;
    if (j == n) return true;
    // Contiguous iff some rotation of the arc {0..j-1} equals S.
    for (int start = 0; start < n; ++start)
        if (NodeSet::arc(n, start, j) == s) return true;
    return false;
}

NodeSet RingTopology::rotate(NodeSet s, int k) const {
    require_small();
    const int n = static_cast<int>(n_);
    std::uint64_t out = 0;
    for (int i : s.members()) out |= std::uint64_t{1} << (((i + k) % n + n) % n);
    return NodeSet(out);
}

std::int64_t min_incoming_edges_formula(std::int64_t n, std::int64_t f, std::int64_t j) {
    max_radius(n);
    if (f < 1 || f > (n - 1) / 2) throw InvalidArgument(fmt::format("radius {} invalid for n = {}", f, n));
    if (j < 1 || j > n) throw InvalidArgument(fmt::format("set size {} outside [1, {}]", j, n));
    if (j <= f) return checked_sub(checked_mul(2 * j, f), checked_mul(j, j - 1));
    if (j < n - f) return checked_mul(f, f + 1);
    const std::int64_t m = n - j;
    return checked_sub(checked_mul(2 * m, f), checked_mul(m, m - 1));
}

}  // namespace ringage
