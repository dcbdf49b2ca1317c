#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "pblocks/connectivity.hpp"
#include "pblocks/error.hpp"
#include "pblocks/io.hpp"

namespace pblocks::cli {

namespace {

struct Bounds {
    std::size_t coset = 100000;
    std::size_t aut_elements = 100000;
    std::size_t face_relabelings = 40320;
    std::size_t check_relabelings = 720;

    explicit Bounds(std::optional<std::size_t> limit)
    {
        if (limit)
            coset = aut_elements = face_relabelings = check_relabelings = *limit;
    }
};

// Either a JSON body or, for --format dot, a finished DOT document.
struct Piece {
    Json json;
    std::string dot;
};

using Handler = std::function<Piece(const Graph &, const RunConfig &, const Bounds &)>;

std::shared_ptr<const Graph> share(Graph g)
{
    return std::make_shared<const Graph>(std::move(g));
}

bool three_connected(const Graph &g)
{
    if (g.vertex_count() == 4)
        return g.edge_count() == 6;
    return g.vertex_count() >= 5 && is_k_connected(g, 3);
}

AutGroup group_of(const Graph &g, const Bounds &b)
{
    if (g.vertex_count() <= AutOptions{}.vertex_limit) {
        try {
            return automorphism_group(g, {AutOptions{}.vertex_limit, b.aut_elements});
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::TooLarge)
                throw;
        }
    }
    return automorphism_generators_only(g);
}

Piece blocks_cmd(const Graph &g, const RunConfig &cfg, const Bounds &)
{
    Piece p;
    std::optional<Reduction> red;
    auto host = share(g);
    if (cfg.reduce) {
        red = homeomorphic_reduce(g);
        host = share(red->graph);
    }
    const auto b = block_cut_tree(host);
    p.json = to_json(b);
    if (red)
        p.json["reduction"] = to_json(*red);
    if (cfg.format == Format::Dot)
        p.dot = to_dot(b);
    return p;
}

Piece triblocks_cmd(const Graph &g, const RunConfig &cfg, const Bounds &)
{
    const auto t = triblock_tree(g, {cfg.reduce});
    Piece p;
    p.json = to_json(t);
    if (cfg.format == Format::Dot)
        p.dot = to_dot(t);
    return p;
}

Piece planar_cmd(const Graph &g, const RunConfig &cfg, const Bounds &)
{
    const auto r = planarity_test(g);
    Piece p;
    p.json = to_json(r);
    if (cfg.format == Format::Dot)
        p.dot = to_dot(r.planar ? g : r.witness, r.planar ? "planar" : "witness");
    return p;
}

Piece faces_cmd(const Graph &g, const RunConfig &cfg, const Bounds &b)
{
    const auto r = planarity_test(g);
    if (!r.planar)
        throw Error(ErrorKind::PreconditionViolated, "graph is not planar", format_edge_list(r.witness));
    Piece p;
    std::vector<std::size_t> sizes;
    for (const auto &f : r.faces)
        sizes.push_back(f.size());
    std::sort(sizes.begin(), sizes.end());
    p.json = {{"faces", r.faces},
              {"face_sizes", sizes},
              {"euler", static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
                            static_cast<long>(r.faces.size())}};
    if (three_connected(g)) {
        const auto u = face_multiset_uniqueness_check(g, b.face_relabelings);
        p.json["uniqueness"] = {{"relabelings", u.relabelings},
                                {"exhaustive", u.exhaustive},
                                {"sizes_agree", u.sizes_agree},
                                {"faces_agree", u.faces_agree}};
    }
    if (cfg.format == Format::Dot)
        p.dot = to_dot(g, "faces");
    return p;
}

Piece autos_cmd(const Graph &g, const RunConfig &cfg, const Bounds &b)
{
    const auto h = group_of(g, b);
    Piece p;
    p.json = to_json(h);
    p.json["materialized"] = h.materialized();
    if (cfg.format == Format::Dot)
        p.dot = to_dot(g, "autos");
    return p;
}

Piece quotient_cmd(const Graph &g, const RunConfig &cfg, const Bounds &b)
{
    const auto h = group_of(g, b);
    const auto q = quotient_graph(g, h);
    Piece p;
    p.json = to_json(q);
    p.json["order"] = h.order;
    if (cfg.format == Format::Dot) {
        std::ostringstream s;
        s << "graph quotient {\n";
        for (std::size_t i = 0; i < q.vertex_orbits.size(); ++i)
            s << "  o" << i << " [label=\"" << q.vertex_orbits[i].size() << "\"];\n";
        for (const auto &o : q.edge_orbits)
            s << "  o" << o.from << " -- o" << o.to << " [label=\"" << o.edges.size() << "\"];\n";
        s << "}\n";
        p.dot = s.str();
    }
    return p;
}

// Every non-cut node's real edges, counted per host edge.
bool edges_partitioned(const TriBlockTree &t)
{
    std::map<Edge, int> owners;
    for (const auto &n : t.nodes)
        if (n.kind != NodeKind::CutPoint)
            for (const Edge &e : n.edges)
                ++owners[e];
    if (owners.size() != t.host->edge_count())
        return false;
    return std::all_of(owners.begin(), owners.end(), [](const auto &kv) { return kv.second == 1; });
}

struct Report {
    Json rows = Json::array();
    bool ok = true;

    void add(std::string name, bool pass, std::string detail = {})
    {
        ok = ok && pass;
        Json row = {{"invariant", std::move(name)}, {"pass", pass}};
        if (!detail.empty())
            row["detail"] = std::move(detail);
        rows.push_back(std::move(row));
    }
};

std::string first_or_empty(const std::vector<std::string> &v)
{
    return v.empty() ? std::string{} : v.front();
}

Piece check_graph(const Graph &g, const Bounds &b)
{
    Report r;

    const auto red = homeomorphic_reduce(g);
    r.add("reduce.idempotent", homeomorphic_reduce(red.graph).graph == red.graph);

    const auto host = share(g);
    const auto bc = block_cut_tree(host);
    {
        std::map<Edge, int> owners;
        for (const auto &n : bc.nodes)
            if (n.kind == NodeKind::Block)
                for (const Edge &e : n.edges)
                    ++owners[e];
        const bool part = owners.size() == g.edge_count() &&
                          std::all_of(owners.begin(), owners.end(), [](const auto &kv) { return kv.second == 1; });
        r.add("blocks.edge_partition", part);
        bool bip = bc.links.size() + 1 == bc.nodes.size();
        for (const auto &l : bc.links)
            bip = bip && ((bc.nodes[l.from].kind == NodeKind::CutPoint) != (bc.nodes[l.to].kind == NodeKind::CutPoint));
        r.add("blocks.bipartite_tree", bip);
        std::vector<VertexId> cuts;
        for (const auto &n : bc.nodes)
            if (n.kind == NodeKind::CutPoint)
                cuts.push_back(n.vertices.front());
        std::sort(cuts.begin(), cuts.end());
        r.add("blocks.cut_points", cuts == cut_vertices(g));
        r.add("blocks.tree_correspondence", verify_tree_correspondence(bc.tree, bc.family).empty(),
              first_or_empty(verify_tree_correspondence(bc.tree, bc.family)));
    }

    const auto tb = triblock_tree(g);
    {
        const auto crossing = find_crossing_pair(tb.family);
        r.add("triblocks.nested", !crossing,
              crossing ? std::to_string(crossing->first) + " crosses " + std::to_string(crossing->second) : "");
        const auto issues = verify_tree_correspondence(tb.tree, tb.family);
        r.add("triblocks.tree_correspondence", issues.empty(), first_or_empty(issues));
        r.add("triblocks.edge_partition", edges_partitioned(tb));
        std::string bad;
        bool witnesses = true;
        for (std::size_t i = 0; i < tb.nodes.size(); ++i) {
            const auto &n = tb.nodes[i];
            if (n.kind == NodeKind::CutPoint || n.kind == NodeKind::Hinge)
                continue;
            if (!tb.torsos[i])
                continue;
            const auto kind = classify_graph(tb.torsos[i]->z);
            if (!kind || *kind != n.kind)
                bad = bad.empty() ? "node " + std::to_string(i) : bad;
            witnesses = witnesses && witness_contracts_to_torso(*tb.torsos[i]);
        }
        r.add("triblocks.torsos_conform", bad.empty(), bad);
        r.add("triblocks.witnesses_contract", witnesses);
    }

    const auto pl = planarity_test(g);
    if (pl.planar) {
        const long euler = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
                           static_cast<long>(pl.faces.size());
        r.add("planar.euler", euler == 2, "V - E + F = " + std::to_string(euler));
        std::size_t total = 0;
        for (const auto &f : pl.faces)
            total += f.size();
        r.add("planar.face_partition", total == 2 * g.edge_count());
        bool inherit = true;
        for (const auto &t : tb.torsos)
            if (t)
                inherit = inherit && (t->z.vertex_count() < 5 || planarity_test(t->z).planar);
        r.add("planar.torsos_inherit", inherit);
    } else {
        r.add("planar.witness_valid", is_kuratowski_subdivision(pl.witness));
    }

    const auto h = group_of(g, b);
    bool autos = true;
    for (const auto &p : h.generators)
        autos = autos && is_automorphism(g, p);
    r.add("symmetry.generators", autos);
    {
        const auto bi = tree_action_check(bc.tree, bc.family, h);
        r.add("symmetry.block_tree_action", bi.empty(), first_or_empty(bi));
        const auto ti = tree_action_check(tb.tree, tb.family, h);
        r.add("symmetry.triblock_tree_action", ti.empty(), first_or_empty(ti));
    }

    if (pl.planar && three_connected(g)) {
        bool facial = true;
        for (const auto &p : h.generators)
            facial = facial && facial_preservation_check(*pl.embedding, p);
        r.add("planar.facial_preservation", facial);
        const auto u = face_multiset_uniqueness_check(g, b.check_relabelings);
        r.add("planar.face_uniqueness", u.unique(),
              std::to_string(u.relabelings) + (u.exhaustive ? " relabelings, exhaustive" : " relabelings, sampled"));
    }

    Piece p;
    p.json = {{"invariants", std::move(r.rows)}, {"pass", r.ok}};
    return p;
}

bool looks_like_presentation(std::string_view text)
{
    return text.find("gens:") != std::string_view::npos || text.find("surface(") != std::string_view::npos;
}

Json cayley_body(const Presentation &pr, const Bounds &b, Graph *out_graph, Report *report)
{
    const auto t = coset_enumerate(pr, b.coset);
    Graph g = cayley_graph(t, pr);
    const auto action = check_regular_action(t, g);
    Json body = {{"presentation", to_json(pr)},
                 {"order", t.order},
                 {"graph", to_json(g)},
                 {"regular_action",
                  {{"automorphisms", action.automorphisms}, {"free", action.free}, {"transitive", action.transitive}}}};
    const bool connected = is_connected(g);
    if (connected) {
        const auto pl = planarity_test(g);
        body["planar"] = pl.planar;
    }
    if (report) {
        const auto table = verify_table(t, pr);
        report->add("cayley.table", !table, table.value_or(""));
        report->add("cayley.regular_action", action.ok());
        report->add("cayley.connected", connected);
        if (connected && g.vertex_count() > 1) {
            const auto tb = triblock_tree(g);
            bool conform = true;
            for (std::size_t i = 0; i < tb.nodes.size(); ++i)
                if (tb.torsos[i]) {
                    const auto k = classify_graph(tb.torsos[i]->z);
                    conform = conform && k && *k == tb.nodes[i].kind;
                }
            report->add("cayley.triblocks_conform", conform);
        }
    }
    if (out_graph)
        *out_graph = std::move(g);
    return body;
}

Json error_json(ErrorKind kind, const std::string &message, const std::string &witness)
{
    return {{"schema", 1},
            {"error", {{"kind", std::string(to_string(kind))}, {"message", message}, {"witness", witness}}}};
}

void render_text(const Json &j, std::ostringstream &s, int indent);

void render_scalar_or_nested(const Json &v, std::ostringstream &s, int indent)
{
    const bool flat_array =
        v.is_array() && std::all_of(v.begin(), v.end(), [](const Json &x) { return x.is_primitive(); });
    const bool pair_array =
        v.is_array() && std::all_of(v.begin(), v.end(), [](const Json &x) {
            return x.is_array() && std::all_of(x.begin(), x.end(), [](const Json &y) { return y.is_primitive(); });
        });
    if (v.is_primitive()) {
        const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
        s << (text.empty() ? "" : " ") << text << "\n";
    } else if (flat_array || (pair_array && !v.empty())) {
        s << " ";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                s << " ";
            if (flat_array) {
                s << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
            } else {
                s << "(";
                for (std::size_t k = 0; k < v[i].size(); ++k)
                    s << (k ? " " : "") << v[i][k].dump();
                s << ")";
            }
        }
        s << "\n";
    } else {
        s << "\n";
        render_text(v, s, indent + 2);
    }
}

void render_text(const Json &j, std::ostringstream &s, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto &[key, v] : j.items()) {
            s << pad << key << ":";
            render_scalar_or_nested(v, s, indent);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            s << pad << "[" << i << "]:";
            render_scalar_or_nested(j[i], s, indent);
        }
    } else {
        s << pad << j.dump() << "\n";
    }
}

std::string emit(const Json &doc, Format format)
{
    if (format == Format::Text) {
        std::ostringstream s;
        render_text(doc, s, 0);
        return s.str();
    }
    return doc.dump(2) + "\n";
}

const std::map<std::string, Handler> &handlers()
{
    static const std::map<std::string, Handler> h = {
        {"blocks", blocks_cmd},   {"triblocks", triblocks_cmd}, {"planar", planar_cmd},
        {"faces", faces_cmd},     {"autos", autos_cmd},         {"quotient", quotient_cmd},
    };
    return h;
}

RunResult run_graph(const RunConfig &cfg, const Graph &g, const Bounds &b)
{
    Json doc = {{"schema", 1}, {"command", cfg.command}};
    std::string dot;
    auto solve = [&](const Graph &part) -> Piece {
        if (cfg.command == "check")
            return check_graph(part, b);
        return handlers().at(cfg.command)(part, cfg, b);
    };

    bool failed_check = false;
    if (cfg.per_component) {
        std::vector<std::future<Piece>> jobs;
        const auto comps = connected_components(g);
        for (const auto &c : comps)
            jobs.push_back(std::async(std::launch::async, [&solve, part = induced_subgraph(g, c)] { return solve(part); }));
        Json results = Json::array();
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            Piece p = jobs[i].get();
            failed_check = failed_check || (cfg.command == "check" && !p.json["pass"].get<bool>());
            results.push_back({{"vertices", comps[i]}, {"result", std::move(p.json)}});
            dot += p.dot;
        }
        doc["components"] = std::move(results);
    } else {
        Piece p = solve(g);
        failed_check = cfg.command == "check" && !p.json["pass"].get<bool>();
        doc["result"] = std::move(p.json);
        dot = std::move(p.dot);
    }
    if (cfg.format == Format::Dot)
        return {0, dot};
    return {failed_check ? 1 : 0, emit(doc, cfg.format)};
}

RunResult run_cayley(const RunConfig &cfg, std::string_view input, const Bounds &b, bool as_check)
{
    const auto pr = parse_presentation(input);
    Graph g;
    Report report;
    Json body = cayley_body(pr, b, &g, as_check ? &report : nullptr);
    if (cfg.format == Format::Dot)
        return {0, to_dot(g, "cayley")};
    Json doc = {{"schema", 1}, {"command", cfg.command}};
    if (as_check) {
        doc["result"] = {{"invariants", std::move(report.rows)}, {"pass", report.ok}};
        return {report.ok ? 0 : 1, emit(doc, cfg.format)};
    }
    doc["result"] = std::move(body);
    return {0, emit(doc, cfg.format)};
}

} // namespace

const std::vector<std::string> &commands()
{
    static const std::vector<std::string> c = {"blocks", "triblocks", "planar", "faces",
                                               "autos",  "quotient",  "cayley", "check"};
    return c;
}

std::optional<std::size_t> limit_from_env()
{
    const char *v = std::getenv("PLANAR_BLOCKS_LIMIT");
    if (!v || !*v)
        return std::nullopt;
    std::size_t n = 0;
    const std::string_view s(v);
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || end != s.data() + s.size() || n == 0)
        return std::nullopt;
    return n;
}

RunResult run(const RunConfig &cfg, std::string_view input)
{
    const Format error_format = cfg.format == Format::Text ? Format::Text : Format::Json;
    try {
        if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end())
            throw Error(ErrorKind::PreconditionViolated, "unknown command", cfg.command);
        if (cfg.limit && *cfg.limit == 0)
            throw Error(ErrorKind::PreconditionViolated, "limit must be at least 1", "0");
        if (cfg.format == Format::Dot && cfg.command == "check")
            throw Error(ErrorKind::PreconditionViolated, "check has no DOT form", "check");

        const Bounds bounds(cfg.limit);
        if (cfg.command == "cayley")
            return run_cayley(cfg, input, bounds, false);
        if (cfg.command == "check" && looks_like_presentation(input))
            return run_cayley(cfg, input, bounds, true);
        return run_graph(cfg, parse_edge_list(input), bounds);
    } catch (const Error &e) {
        const bool parse = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::MalformedInput;
        return {parse ? 2 : 1, emit(error_json(e.kind(), e.message(), e.witness()), error_format)};
    } catch (const std::exception &e) {
        return {1, emit(error_json(ErrorKind::InternalInvariant, e.what(), ""), error_format)};
    }
}

} // namespace pblocks::cli
