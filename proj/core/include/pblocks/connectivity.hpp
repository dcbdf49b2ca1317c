#pragma once

#include <optional>
#include <utility>

#include "pblocks/graph.hpp"

namespace pblocks {

// Number of internally vertex-disjoint s-t paths, capped at `cap`. A direct
// edge s-t counts as one path. Computed with unit-capacity augmenting paths
// on the vertex-split digraph (Menger).
std::size_t local_connectivity(const Graph &g, std::size_t s_index, std::size_t t_index, std::size_t cap);

// k-connectivity for k in {1,2,3}, decided by Menger's theorem: every pair of
// distinct vertices must be joined by k internally disjoint paths.
//   k = 1: connected and non-empty;
//   k = 2: at least 3 vertices;
//   k = 3: at least 5 vertices (so K4 and smaller report false).
bool is_k_connected(const Graph &g, int k);

// Some vertex set of size one or two whose removal disconnects g, found by
// enumeration in index order. nullopt when none exists.
std::optional<std::pair<VertexId, VertexId>> find_separating_pair(const Graph &g);
std::optional<VertexId> find_cut_vertex(const Graph &g);

} // namespace pblocks
