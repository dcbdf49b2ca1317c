#include "pblocks/blocks1.hpp"

#include <algorithm>

#include "pblocks/error.hpp"

namespace pblocks {

std::string_view to_string(NodeKind kind)
{
    switch (kind) {
    case NodeKind::CutPoint: return "cutpoint";
    case NodeKind::Block: return "block";
    case NodeKind::Hinge: return "hinge";
    case NodeKind::Cycle: return "cycle";
    case NodeKind::ThreeConnected: return "3-connected";
    }
    return "?";
}

std::vector<VertexId> cut_vertices(const Graph &g)
{
    if (!is_connected(g))
        throw Error(ErrorKind::NotConnected, "cut vertices need a connected graph");
    std::vector<VertexId> out;
    const std::size_t n = g.vertex_count();
    std::vector<bool> removed(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        removed[i] = true;
        int count = 0;
        component_labels(g, removed, &count);
        if (count > 1)
            out.push_back(g.vertex_at(i));
        removed[i] = false;
    }
    return out;
}

NestedFamily b1_family(std::shared_ptr<const Graph> g)
{
    const auto cuts = cut_vertices(*g);
    const std::size_t n = g->vertex_count();
    std::vector<Separation> elements;
    std::vector<bool> removed(n, false);
    for (VertexId x : cuts) {
        const std::size_t xi = g->index_of(x);
        removed[xi] = true;
        int count = 0;
        const auto label = component_labels(*g, removed, &count);
        removed[xi] = false;
        for (int c = 0; c < count; ++c) {
            Bits ea(g->edge_count());
            for (std::size_t e = 0; e < g->edge_count(); ++e) {
                auto [a, b] = g->endpoints(e);
                if (label[a] == c || label[b] == c)
                    ea.set(e);
            }
            auto s = Separation::from_edge_mask(g, std::move(ea));
            if (!s)
                throw Error(ErrorKind::InternalInvariant, "component side is not a separation",
                            "cut-point " + std::to_string(x));
            elements.push_back(std::move(*s));
        }
    }
    return NestedFamily::from(std::move(elements));
}

void assemble_nodes(const Graph &host, const NestedFamily &f, const StructureTree &t,
                    const std::vector<NodeKind> &kind, std::vector<DecompNode> &nodes,
                    std::vector<DecompLink> &links)
{
    nodes.clear();
    links.clear();
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        DecompNode node;
        node.kind = kind[v];
        node.tree_vertex = v;
        const auto core = vertex_core(host, f, t.members[v]);
        for (auto i = core.vertices.find_first(); i != Bits::npos; i = core.vertices.find_next(i))
            node.vertices.push_back(host.vertex_at(i));
        for (auto e = core.edges.find_first(); e != Bits::npos; e = core.edges.find_next(e))
            node.edges.push_back(host.edge_at(e));
        nodes.push_back(std::move(node));
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.complement_of(i) < i)
            continue;
        const std::size_t a = t.tail[i];
        const std::size_t b = t.head[i];
        const auto &boundary = f[i].boundary();
        if (boundary.size() == 1 && kind[a] != NodeKind::CutPoint && kind[b] != NodeKind::CutPoint) {
            DecompNode cut;
            cut.kind = NodeKind::CutPoint;
            cut.vertices = boundary;
            const std::size_t j = nodes.size();
            nodes.push_back(std::move(cut));
            links.push_back({a, j, i});
            links.push_back({j, b, i});
        } else {
            links.push_back({a, b, i});
        }
    }
}

BlockCutTree block_cut_tree(std::shared_ptr<const Graph> g)
{
    BlockCutTree out;
    out.host = g;
    out.family = b1_family(g);
    out.tree = build_structure_tree(out.family);
    std::vector<NodeKind> kind(out.tree.vertex_count(), NodeKind::Block);
    for (std::size_t v = 0; v < out.tree.vertex_count(); ++v) {
        const auto core = vertex_core(*g, out.family, out.tree.members[v]);
        if (core.vertices.count() == 1 && !out.tree.members[v].empty())
            kind[v] = NodeKind::CutPoint;
    }
    assemble_nodes(*g, out.family, out.tree, kind, out.nodes, out.links);
    return out;
}

} // namespace pblocks
