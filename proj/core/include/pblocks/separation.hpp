#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pblocks/graph.hpp"

namespace pblocks {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// A subgraph A of a host X with a boundary of one or two vertices.
//
// Stored as (vertex mask, edge mask, boundary) over host indices. Two
// separations with the same vertices but different boundary-incident edges
// are different objects. A valid separation satisfies:
//   - every edge of A has both endpoints in A;
//   - every vertex of A outside the boundary has all its host edges in A;
//   - each boundary vertex has some, but not all, host edges in A;
//   - with two boundary vertices, A is neither a single edge nor the host
//     minus one edge.
class Separation {
public:
    Separation() = default;
    // Raw constructor; does not validate. Use validate() or the factories.
    Separation(std::shared_ptr<const Graph> host, Bits va, Bits ea, std::vector<VertexId> boundary);

    // The boundary is derived as the set of vertices of A that are not full.
    // Returns nullopt when the edge set does not describe a valid separation.
    static std::optional<Separation> from_edge_mask(std::shared_ptr<const Graph> host, Bits ea);
    // Throws MalformedInput when the edges do not form a valid separation.
    static Separation from_edges(std::shared_ptr<const Graph> host, std::span<const Edge> edges);

    const Graph &host() const { return *host_; }
    const std::shared_ptr<const Graph> &host_ptr() const { return host_; }
    const Bits &vertex_mask() const { return va_; }
    const Bits &edge_mask() const { return ea_; }
    const std::vector<VertexId> &boundary() const { return boundary_; }

    std::vector<VertexId> vertices() const;
    std::vector<Edge> edges() const;
    std::vector<std::size_t> edge_indices() const;
    std::size_t edge_count() const { return ea_.count(); }
    std::size_t vertex_count() const { return va_.count(); }
    bool contains_vertex(VertexId v) const;
    bool contains_edge(const Edge &e) const;
    bool is_boundary(VertexId v) const;

    // A* : vertices (VX - VA) u boundary, edges EX - EA, same boundary.
    Separation complement() const;

    // Subgraph order: VA subset of VB and EA subset of EB.
    bool subset_of(const Separation &other) const;
    bool proper_subset_of(const Separation &other) const { return subset_of(other) && !(*this == other); }

    bool operator==(const Separation &other) const;

    std::string describe() const;

private:
    std::shared_ptr<const Graph> host_;
    Bits va_;
    Bits ea_;
    std::vector<VertexId> boundary_;
};

// Deterministic total order: (boundary size, |EA|, lexicographic edge list).
bool canonical_less(const Separation &a, const Separation &b);

// Checks every separation invariant against the host; returns the first
// violation, or nullopt when valid.
std::optional<std::string> validate(const Separation &s);

// Which of A<=B, A<=B*, A*<=B, A*<=B* hold.
struct Nesting {
    bool a_in_b = false;
    bool a_in_b_star = false;
    bool a_star_in_b = false;
    bool a_star_in_b_star = false;

    bool nested() const { return a_in_b || a_in_b_star || a_star_in_b || a_star_in_b_star; }
    std::string describe() const;
};

Nesting nested(const Separation &a, const Separation &b);

} // namespace pblocks
