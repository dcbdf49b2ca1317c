#include "pblocks/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pblocks/error.hpp"

namespace pblocks {

namespace {

bool is_path_graph(const Graph &g)
{
    if (g.vertex_count() < 2 || g.edge_count() + 1 != g.vertex_count())
        return false;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (g.degree_of(i) > 2)
            return false;
    return is_connected(g);
}

} // namespace

Reduction homeomorphic_reduce(const Graph &g)
{
    if (!is_connected(g))
        throw Error(ErrorKind::NotConnected, "homeomorphic reduction needs a connected graph");

    Reduction r;
    if (is_cycle(g)) {
        r.graph = g;
        r.edge_map.resize(g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            r.edge_map[e] = e;
        r.exemption = ReduceExemption::Cycle;
        return r;
    }

    // Working simple graph: each current edge owns the original edges it stands for.
    std::map<Edge, std::vector<std::size_t>> owner;
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : g.vertices())
        adj[v];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge &ed = g.edge_at(e);
        owner[ed].push_back(e);
        adj[ed.u].insert(ed.v);
        adj[ed.v].insert(ed.u);
    }

    auto all_degree_two = [&] {
        return std::all_of(adj.begin(), adj.end(), [](const auto &kv) { return kv.second.size() == 2; });
    };

    for (;;) {
        if (adj.size() >= 3 && all_degree_two()) {
            r.exemption = ReduceExemption::Cycle;
            break;
        }
        auto it = std::find_if(adj.begin(), adj.end(), [](const auto &kv) { return kv.second.size() == 2; });
        if (it == adj.end())
            break;
        const VertexId v = it->first;
        const VertexId a = *it->second.begin();
        const VertexId b = *std::next(it->second.begin());

        std::vector<std::size_t> merged = std::move(owner[make_edge(v, a)]);
        auto &rest = owner[make_edge(v, b)];
        merged.insert(merged.end(), rest.begin(), rest.end());
        owner.erase(make_edge(v, a));
        owner.erase(make_edge(v, b));
        adj[a].erase(v);
        adj[b].erase(v);
        adj.erase(v);
        r.suppressed.push_back(v);

        auto &target = owner[make_edge(a, b)];
        target.insert(target.end(), merged.begin(), merged.end());
        adj[a].insert(b);
        adj[b].insert(a);
    }

    std::vector<Edge> edges;
    for (const auto &kv : owner)
        edges.push_back(kv.first);
    std::vector<VertexId> verts;
    for (const auto &kv : adj)
        verts.push_back(kv.first);
    r.graph = Graph::from_edges(std::span<const Edge>(edges), verts);
    r.edge_map.assign(g.edge_count(), 0);
    for (const auto &[edge, originals] : owner) {
        const std::size_t idx = *r.graph.find_edge(edge.u, edge.v);
        for (std::size_t e : originals)
            r.edge_map[e] = idx;
    }
    if (is_path_graph(g))
        r.exemption = ReduceExemption::Interval;
    std::sort(r.suppressed.begin(), r.suppressed.end());
    return r;
}

std::optional<Separation> pull_back(const Reduction &r, std::shared_ptr<const Graph> original, const Separation &s)
{
    Bits ea(original->edge_count());
    for (std::size_t e = 0; e < original->edge_count(); ++e)
        if (s.edge_mask().test(r.edge_map[e]))
            ea.set(e);
    return Separation::from_edge_mask(std::move(original), std::move(ea));
}

} // namespace pblocks
