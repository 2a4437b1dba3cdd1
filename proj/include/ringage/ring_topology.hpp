#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "ringage/neighbor_function.hpp"

namespace ringage {

/// Subset of the nodes 0..n-1 of a small ring (n <= 64), stored as a bitmask.
/// Bit i set means node i is a member. Usable directly as a dense array index.
class NodeSet {
public:
    static constexpr int kMaxNodes = 64;

    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

    static NodeSet full(int n);
    /// Arc {start, start+1, ..., start+len-1} taken mod n.
    static NodeSet arc(int n, int start, int len);

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }

    constexpr NodeSet with(int i) const { return NodeSet(bits_ | (std::uint64_t{1} << i)); }
    constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
    constexpr bool operator==(const NodeSet&) const = default;

    /// Members in increasing order.
    std::vector<int> members() const;

private:
    std::uint64_t bits_ = 0;
};

/// Incoming edge count together with a marker for the full node set, which
/// has no incoming edges and must never reach a division.
struct IncomingEdges {
    std::int64_t count = 0;
    bool full_set = false;
};

/// Generalized ring: n nodes on a cycle, each adjacent to the f nearest nodes
/// on either side. Immutable once constructed.
class RingTopology {
public:
    /// Requires n >= 3 and 1 <= f <= floor((n-1)/2).
    RingTopology(std::int64_t n, std::int64_t f);
    RingTopology(std::int64_t n, const NeighborFunction& spec);

    std::int64_t n() const { return n_; }
    std::int64_t f() const { return f_; }
    std::int64_t degree() const { return 2 * f_; }

    std::int64_t circular_distance(std::int64_t i, std::int64_t j) const;
    bool adjacent(std::int64_t i, std::int64_t j) const;

    /// Neighbor of i at signed offset in {-f..-1, 1..f}.
    std::int64_t neighbor_at(std::int64_t i, std::int64_t offset) const;

    /// The 2f neighbors of i: i+1..i+f, then i-1..i-f (mod n).
    std::vector<std::int64_t> neighbor_list(std::int64_t i) const;

    // The following operate on NodeSet and need n <= 64.

    NodeSet neighbors(int i) const;
    /// Number of ordered pairs (i, j), i outside S, j in S, i adjacent to j.
    /// Throws on an empty S; reports the full set through IncomingEdges::full_set.
    IncomingEdges incoming_edge_count(NodeSet s) const;
    /// |neighbors(i) ∩ S| for i outside S, and 0 for i in S.
    std::int64_t incoming_edges_from(NodeSet s, int i) const;
    /// Unordered adjacent pairs with both endpoints in S.
    std::int64_t inner_edge_count(NodeSet s) const;
    /// Connected in the 2f-neighbor graph. The empty set is not connected.
    bool connected(NodeSet s) const;
    /// Occupies consecutive ring positions (the full set counts as contiguous).
    bool contiguous(NodeSet s) const;
    /// Rotation of S by k positions.
    NodeSet rotate(NodeSet s, int k) const;

private:
    void require_small() const;
    void require_node(std::int64_t i) const;

    std::int64_t n_;
    std::int64_t f_;
    std::vector<std::uint64_t> neighbor_masks_;  // populated only for n <= 64
};

/// Minimum incoming-edge count over contiguous sets of size j on an (n, f) ring:
///   j <= f          : 2jf - j(j-1)
///   f < j < n - f   : f(f+1)
///   j >= n - f      : 2(n-j)f - (n-j)(n-j-1)
/// Exact integer arithmetic, overflow-checked. Requires 1 <= j <= n.
std::int64_t min_incoming_edges_formula(std::int64_t n, std::int64_t f, std::int64_t j);

}  // namespace ringage
