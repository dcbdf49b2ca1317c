#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pblocks/graph.hpp"
#include "pblocks/separation.hpp"

namespace pblocks {

enum class ReduceExemption {
    None,
    Cycle,    // 2-regular: returned unchanged (or reduction stopped at a cycle)
    Interval, // homeomorphic to an interval: reduced to a single edge
};

struct Reduction {
    Graph graph;
    // Original edge index -> reduced edge index. Every original edge maps
    // somewhere: a suppressed chain maps to the edge joining its ends, and
    // parallel chains that were collapsed share one reduced edge.
    std::vector<std::size_t> edge_map;
    ReduceExemption exemption = ReduceExemption::None;
    std::vector<VertexId> suppressed;
};

// Suppresses degree-2 vertices one at a time (smallest id first) and
// collapses any parallel edges that appear. Stops when no degree-2 vertex is
// left or when the remaining graph is a cycle. Requires a connected graph.
Reduction homeomorphic_reduce(const Graph &g);

// Separation of the original graph made of every edge that maps into `s`.
// nullopt if the preimage is not a valid separation of `original`.
std::optional<Separation> pull_back(const Reduction &r, std::shared_ptr<const Graph> original, const Separation &s);

} // namespace pblocks
