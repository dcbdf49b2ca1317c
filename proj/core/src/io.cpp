#include "pblocks/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "pblocks/error.hpp"

namespace pblocks {

namespace {

std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool parse_id(std::string_view tok, std::uint64_t &out)
{
    if (tok.empty())
        return false;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

Json edge_json(const Edge &e)
{
    return Json::array({e.u, e.v});
}

Json edges_json(const std::vector<Edge> &edges)
{
    Json out = Json::array();
    for (const Edge &e : edges)
        out.push_back(edge_json(e));
    return out;
}

Json node_json(const DecompNode &n, std::size_t id)
{
    Json j;
    j["id"] = id;
    j["kind"] = std::string(to_string(n.kind));
    j["tree_vertex"] = n.tree_vertex ? Json(*n.tree_vertex) : Json(nullptr);
    j["vertices"] = n.vertices;
    j["edges"] = edges_json(n.edges);
    j["virtual_edges"] = edges_json(n.virtual_edges);
    j["tiny"] = n.tiny;
    return j;
}

Json links_json(const std::vector<DecompLink> &links)
{
    Json out = Json::array();
    for (const auto &l : links)
        out.push_back({{"from", l.from}, {"to", l.to}, {"element", l.element}});
    return out;
}

std::string dot_label(const DecompNode &n)
{
    std::ostringstream s;
    s << to_string(n.kind);
    if (n.tiny)
        s << " (tiny)";
    s << "\\n{";
    for (std::size_t i = 0; i < n.vertices.size(); ++i)
        s << (i ? "," : "") << n.vertices[i];
    s << "}";
    return s.str();
}

std::string nodes_to_dot(std::string_view name, const std::vector<DecompNode> &nodes,
                         const std::vector<DecompLink> &links)
{
    std::ostringstream s;
    s << "graph " << name << " {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const bool cut = nodes[i].kind == NodeKind::CutPoint;
        s << "  n" << i << " [label=\"" << dot_label(nodes[i]) << "\", shape=" << (cut ? "circle" : "box") << "];\n";
    }
    for (const auto &l : links)
        s << "  n" << l.from << " -- n" << l.to << " [label=\"" << l.element << "\"];\n";
    s << "}\n";
    return s.str();
}

} // namespace

Graph parse_edge_list(std::string_view text)
{
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<VertexId> declared;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = strip(line);
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.rfind("vertices:", 0) == 0) {
            std::uint64_t n = 0;
            if (!parse_id(strip(line.substr(9)), n) || n > (std::uint64_t{1} << 24))
                throw Error(ErrorKind::ParseError, "bad vertex count", where);
            for (std::uint64_t i = 0; i < n; ++i)
                declared.push_back(static_cast<VertexId>(i));
            continue;
        }
        std::vector<std::string_view> tokens;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            const std::size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            if (pos > start)
                tokens.push_back(line.substr(start, pos - start));
        }
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        if (tokens.size() != 2 || !parse_id(tokens[0], a) || !parse_id(tokens[1], b) || a > UINT32_MAX ||
            b > UINT32_MAX)
            throw Error(ErrorKind::ParseError, "expected two non-negative integer ids", where);
        pairs.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
    return Graph::from_edges(pairs, declared);
}

std::string format_edge_list(const Graph &g)
{
    std::ostringstream s;
    std::vector<bool> touched(g.vertex_count(), false);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        touched[a] = touched[b] = true;
    }
    const bool dense = !g.vertices().empty() && g.vertices().back() + 1 == g.vertex_count();
    if (dense && std::find(touched.begin(), touched.end(), false) != touched.end())
        s << "vertices: " << g.vertex_count() << "\n";
    for (const Edge &e : g.edges())
        s << e.u << " " << e.v << "\n";
    return s.str();
}

Json to_json(const Graph &g)
{
    return {{"vertices", g.vertices()}, {"edges", edges_json(g.edges())}};
}

Json to_json(const Separation &s)
{
    return {{"boundary", s.boundary()}, {"vertices", s.vertices()}, {"edges", edges_json(s.edges())}};
}

Json to_json(const NestedFamily &f, const StructureTree &t)
{
    Json elements = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Json e = to_json(f[i]);
        e["id"] = i;
        e["complement"] = f.complement_of(i);
        elements.push_back(std::move(e));
    }
    Json vertices = Json::array();
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        vertices.push_back({{"id", v}, {"members", t.members[v]}});
    Json edges = Json::array();
    for (std::size_t i = 0; i < t.edge_count(); ++i)
        edges.push_back({{"element", i}, {"from", t.tail[i]}, {"to", t.head[i]}, {"reversal", t.reversal[i]}});
    return {{"elements", elements}, {"vertices", vertices}, {"edges", edges}};
}

Json to_json(const BlockCutTree &b)
{
    Json nodes = Json::array();
    Json blocks = Json::array();
    Json cuts = Json::array();
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        nodes.push_back(node_json(b.nodes[i], i));
        if (b.nodes[i].kind == NodeKind::CutPoint)
            cuts.push_back(b.nodes[i].vertices.front());
        else
            blocks.push_back(b.nodes[i].vertices);
    }
    return {{"cut_vertices", cuts},
            {"blocks", blocks},
            {"nodes", nodes},
            {"links", links_json(b.links)},
            {"structure_tree", to_json(b.family, b.tree)}};
}

Json to_json(const Reduction &r)
{
    Json map = Json::array();
    for (std::size_t e = 0; e < r.edge_map.size(); ++e)
        map.push_back(Json::array({e, r.edge_map[e]}));
    std::string ex = r.exemption == ReduceExemption::Cycle      ? "cycle"
                     : r.exemption == ReduceExemption::Interval ? "interval"
                                                                : "none";
    return {{"graph", to_json(r.graph)}, {"suppressed", r.suppressed}, {"edge_map", map}, {"exemption", ex}};
}

Json to_json(const TriBlockTree &t)
{
    Json nodes = Json::array();
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        Json n = node_json(t.nodes[i], i);
        if (i < t.torsos.size() && t.torsos[i]) {
            const Torso &tor = *t.torsos[i];
            Json virt = Json::array();
            for (const auto &ve : tor.virtual_edges)
                virt.push_back({{"edge", edge_json(ve.edge)}, {"members", ve.members}, {"witness_path", ve.path}});
            n["torso"] = {{"edges", edges_json(tor.z.edges())}, {"virtual", virt}};
        }
        nodes.push_back(std::move(n));
    }
    Json out = {{"nodes", nodes},
                {"links", links_json(t.links)},
                {"structure_tree", to_json(t.family, t.tree)},
                {"rounds", t.rounds},
                {"log", t.log}};
    if (t.reduction)
        out["reduction"] = to_json(*t.reduction);
    return out;
}

Json to_json(const PlanarityResult &r)
{
    Json out;
    out["result"] = r.planar ? "planar" : "nonplanar";
    if (r.planar) {
        out["faces"] = r.faces;
        Json rot = Json::array();
        const Graph &g = r.embedding->host;
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            std::vector<VertexId> order;
            for (std::size_t j : r.embedding->rotation[i])
                order.push_back(g.vertex_at(j));
            rot.push_back({{"vertex", g.vertex_at(i)}, {"rotation", order}});
        }
        out["rotation"] = rot;
        out["euler"] = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
                       static_cast<long>(r.faces.size());
    } else {
        const auto type = kuratowski_type(r.witness);
        out["witness"] = {{"type", type == KuratowskiType::K5    ? "K5"
                                   : type == KuratowskiType::K33 ? "K3,3"
                                                                 : "unrecognized"},
                          {"edges", edges_json(r.witness.edges())},
                          {"verified", type != KuratowskiType::None}};
    }
    return out;
}

Json to_json(const AutGroup &h)
{
    Json gens = Json::array();
    for (const auto &p : h.generators) {
        std::vector<VertexId> images;
        for (std::size_t i = 0; i < p.size(); ++i)
            images.push_back(h.host.vertex_at(p[i]));
        gens.push_back(images);
    }
    return {{"order", h.order},
            {"vertices", h.host.vertices()},
            {"generators", gens},
            {"orbits", vertex_orbits(h.host, h.generators)}};
}

Json to_json(const QuotientGraph &q)
{
    Json eo = Json::array();
    for (const auto &o : q.edge_orbits)
        eo.push_back({{"from", o.from}, {"to", o.to}, {"loop", o.loop}, {"edges", edges_json(o.edges)}});
    Json mult = Json::array();
    for (const auto &[key, count] : q.multiplicity)
        mult.push_back({{"from", key.first}, {"to", key.second}, {"count", count}});
    return {{"vertex_orbits", q.vertex_orbits}, {"edge_orbits", eo}, {"multiplicity", mult}};
}

Json to_json(const Presentation &pr)
{
    std::vector<std::string> rels;
    for (const auto &w : pr.relators)
        rels.push_back(pr.format(w));
    return {{"generators", pr.generators}, {"relators", rels}};
}

std::string to_dot(const Graph &g, std::string_view name)
{
    std::ostringstream s;
    s << "graph " << name << " {\n";
    for (VertexId v : g.vertices())
        s << "  " << v << ";\n";
    for (const Edge &e : g.edges())
        s << "  " << e.u << " -- " << e.v << ";\n";
    s << "}\n";
    return s.str();
}

std::string to_dot(const BlockCutTree &b)
{
    return nodes_to_dot("blocks", b.nodes, b.links);
}

std::string to_dot(const TriBlockTree &t)
{
    return nodes_to_dot("triblocks", t.nodes, t.links);
}

} // namespace pblocks
