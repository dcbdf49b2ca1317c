#include "pblocks/graph.hpp"

#include <algorithm>
#include <vector>

#include "pblocks/error.hpp"

namespace pblocks {

Edge make_edge(VertexId a, VertexId b)
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

std::string to_string(const Edge &e)
{
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

Graph Graph::from_edges(std::span<const std::pair<VertexId, VertexId>> pairs,
                        std::span<const VertexId> extra_vertices)
{
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto &[a, b] : pairs) {
        if (a == b)
            throw Error(ErrorKind::MalformedInput, "loop at vertex " + std::to_string(a), std::to_string(a));
        edges.push_back(make_edge(a, b));
    }
    return from_edges(std::span<const Edge>(edges), extra_vertices);
}

Graph Graph::from_edges(std::span<const Edge> input, std::span<const VertexId> extra_vertices)
{
    Graph g;
    g.edges_.reserve(input.size());
    for (Edge e : input) {
        if (e.u == e.v)
            throw Error(ErrorKind::MalformedInput, "loop at vertex " + std::to_string(e.u), std::to_string(e.u));
        g.edges_.push_back(make_edge(e.u, e.v));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.vertices_.assign(extra_vertices.begin(), extra_vertices.end());
    for (const Edge &e : g.edges_) {
        g.vertices_.push_back(e.u);
        g.vertices_.push_back(e.v);
    }
    std::sort(g.vertices_.begin(), g.vertices_.end());
    g.vertices_.erase(std::unique(g.vertices_.begin(), g.vertices_.end()), g.vertices_.end());

    const std::size_t n = g.vertices_.size();
    g.adj_.assign(n, {});
    g.inc_.assign(n, {});
    g.ends_.reserve(g.edges_.size());
    for (std::size_t e = 0; e < g.edges_.size(); ++e) {
        const std::size_t a = g.index_of(g.edges_[e].u);
        const std::size_t b = g.index_of(g.edges_[e].v);
        g.ends_.emplace_back(a, b);
        g.adj_[a].push_back(b);
        g.inc_[a].push_back(e);
        g.adj_[b].push_back(a);
        g.inc_[b].push_back(e);
    }
    // Edges are sorted by (u,v), so for vertex a the neighbours above a arrive
    // in order but the ones below may interleave; sort both lists together.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::size_t, std::size_t>> tmp;
        tmp.reserve(g.adj_[i].size());
        for (std::size_t k = 0; k < g.adj_[i].size(); ++k)
            tmp.emplace_back(g.adj_[i][k], g.inc_[i][k]);
        std::sort(tmp.begin(), tmp.end());
        for (std::size_t k = 0; k < tmp.size(); ++k) {
            g.adj_[i][k] = tmp[k].first;
            g.inc_[i][k] = tmp[k].second;
        }
    }
    return g;
}

std::optional<std::size_t> Graph::find_vertex(VertexId v) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v)
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t Graph::index_of(VertexId v) const
{
    auto idx = find_vertex(v);
    if (!idx)
        throw Error(ErrorKind::MalformedInput, "unknown vertex " + std::to_string(v), std::to_string(v));
    return *idx;
}

std::optional<std::size_t> Graph::find_edge(VertexId a, VertexId b) const
{
    if (a == b)
        return std::nullopt;
    const Edge key = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key)
        return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<VertexId> Graph::neighbors(VertexId v) const
{
    std::vector<VertexId> out;
    for (std::size_t j : adj_[index_of(v)])
        out.push_back(vertices_[j]);
    return out;
}

Graph edge_subgraph(const Graph &host, std::span<const std::size_t> edge_indices,
                    std::span<const VertexId> extra_vertices)
{
    std::vector<Edge> edges;
    edges.reserve(edge_indices.size());
    for (std::size_t e : edge_indices)
        edges.push_back(host.edge_at(e));
    return Graph::from_edges(std::span<const Edge>(edges), extra_vertices);
}

Graph induced_subgraph(const Graph &host, std::span<const VertexId> vertices)
{
    std::vector<bool> keep(host.vertex_count(), false);
    for (VertexId v : vertices)
        keep[host.index_of(v)] = true;
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < host.edge_count(); ++e) {
        auto [a, b] = host.endpoints(e);
        if (keep[a] && keep[b])
            edges.push_back(host.edge_at(e));
    }
    return Graph::from_edges(std::span<const Edge>(edges), vertices);
}

std::vector<int> component_labels(const Graph &g, const std::vector<bool> &removed, int *count)
{
    const std::size_t n = g.vertex_count();
    std::vector<int> label(n, -1);
    std::vector<std::size_t> stack;
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != -1 || (!removed.empty() && removed[s]))
            continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : g.neighbors_of(x)) {
                if (label[y] == -1 && (removed.empty() || !removed[y])) {
                    label[y] = next;
                    stack.push_back(y);
                }
            }
        }
        ++next;
    }
    if (count)
        *count = next;
    return label;
}

std::vector<std::vector<VertexId>> connected_components(const Graph &g)
{
    int count = 0;
    const auto label = component_labels(g, {}, &count);
    std::vector<std::vector<VertexId>> out(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        out[static_cast<std::size_t>(label[i])].push_back(g.vertex_at(i));
    return out;
}

bool is_connected(const Graph &g)
{
    int count = 0;
    component_labels(g, {}, &count);
    return count <= 1;
}

bool is_cycle(const Graph &g)
{
    if (g.vertex_count() < 3)
        return false;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (g.degree_of(i) != 2)
            return false;
    return is_connected(g);
}

} // namespace pblocks
