#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pblocks {

using VertexId = std::uint32_t;

// Undirected edge, always stored with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    auto operator<=>(const Edge &) const = default;
};

Edge make_edge(VertexId a, VertexId b);
std::string to_string(const Edge &e);

// Finite simple undirected graph over opaque vertex ids.
//
// Vertices and edges are kept sorted, so vertex index order equals id order
// and every traversal that walks indices is deterministic. Subgraphs built
// from a parent reuse the parent's ids.
class Graph {
public:
    Graph() = default;

    // Duplicate pairs collapse. A pair {v,v} raises MalformedInput.
    static Graph from_edges(std::span<const std::pair<VertexId, VertexId>> pairs,
                            std::span<const VertexId> extra_vertices = {});
    static Graph from_edges(std::span<const Edge> edges, std::span<const VertexId> extra_vertices = {});

    const std::vector<VertexId> &vertices() const noexcept { return vertices_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    bool has_vertex(VertexId v) const { return find_vertex(v).has_value(); }
    std::optional<std::size_t> find_vertex(VertexId v) const;
    std::size_t index_of(VertexId v) const;
    VertexId vertex_at(std::size_t index) const { return vertices_[index]; }

    std::optional<std::size_t> find_edge(VertexId a, VertexId b) const;
    bool adjacent(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }
    const Edge &edge_at(std::size_t e) const { return edges_[e]; }
    // Endpoint indices of edge `e`, first < second.
    std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const { return ends_[e]; }

    // Neighbour indices of the vertex at `index`, ascending.
    std::span<const std::size_t> neighbors_of(std::size_t index) const { return adj_[index]; }
    // Edge indices incident to the vertex at `index`, parallel to neighbors_of.
    std::span<const std::size_t> incident_of(std::size_t index) const { return inc_[index]; }

    std::vector<VertexId> neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return adj_[index_of(v)].size(); }
    std::size_t degree_of(std::size_t index) const { return adj_[index].size(); }

    bool operator==(const Graph &other) const
    {
        return vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::pair<std::size_t, std::size_t>> ends_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<std::size_t>> inc_;
};

// Subgraph made of the listed host edges plus any extra vertices.
Graph edge_subgraph(const Graph &host, std::span<const std::size_t> edge_indices,
                    std::span<const VertexId> extra_vertices = {});
Graph induced_subgraph(const Graph &host, std::span<const VertexId> vertices);

// Component label per vertex index; vertices with removed[i] set get -1.
std::vector<int> component_labels(const Graph &g, const std::vector<bool> &removed, int *count = nullptr);
std::vector<std::vector<VertexId>> connected_components(const Graph &g);
bool is_connected(const Graph &g);
// True when g is connected, has at least 3 vertices and every vertex has degree 2.
bool is_cycle(const Graph &g);

} // namespace pblocks
