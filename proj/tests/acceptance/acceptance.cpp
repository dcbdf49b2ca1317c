#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "pblocks/blocks1.hpp"
#include "pblocks/blocks2.hpp"
#include "pblocks/cayley.hpp"
#include "pblocks/error.hpp"
#include "pblocks/io.hpp"
#include "pblocks/planar.hpp"
#include "pblocks/structure_tree.hpp"
#include "pblocks/symmetry.hpp"

using namespace pblocks;
using Clock = std::chrono::steady_clock;

namespace {

// Runtime budgets in seconds.
constexpr double budget_blocks = 10.0;
constexpr double budget_facial = 60.0;
constexpr double budget_cayley = 30.0;

constexpr std::size_t corpus_blocks = 200;
constexpr std::size_t corpus_nested = 100;
constexpr std::size_t corpus_families = 100;
constexpr int determinism_runs = 3;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::size_t violations = 0;

    void fail(const std::string &why)
    {
        pass = false;
        if (violations++ < 3)
            detail += (detail.empty() ? "" : "; ") + why;
    }
};

std::shared_ptr<const Graph> share(Graph g)
{
    return std::make_shared<const Graph>(std::move(g));
}

std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> fixtures(const std::string &ext)
{
    std::vector<std::filesystem::path> out;
    for (const auto &e : std::filesystem::directory_iterator(PBLOCKS_FIXTURES))
        if (e.path().extension() == ext)
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_cycle_by_degrees(const Graph &g)
{
    if (g.vertex_count() < 3 || g.edge_count() != g.vertex_count() || !oracle::connected_without(g, {}))
        return false;
    for (VertexId v : g.vertices())
        if (g.degree(v) != 2)
            return false;
    return true;
}

bool is_complete(const Graph &g)
{
    const std::size_t n = g.vertex_count();
    return g.edge_count() * 2 == n * (n - 1);
}

// Contract each witness path of Z'' to a single edge and compare with Z.
bool contracts_explicitly(const Torso &t)
{
    std::set<Edge> edges(t.witness.edges().begin(), t.witness.edges().end());
    std::set<VertexId> vertices(t.witness.vertices().begin(), t.witness.vertices().end());
    const std::set<VertexId> kept(t.z_prime.vertices().begin(), t.z_prime.vertices().end());
    for (const auto &ve : t.virtual_edges) {
        if (ve.path.size() < 2 || make_edge(ve.path.front(), ve.path.back()) != ve.edge)
            return false;
        for (std::size_t i = 0; i + 1 < ve.path.size(); ++i)
            if (edges.erase(make_edge(ve.path[i], ve.path[i + 1])) != 1)
                return false;
        for (std::size_t i = 1; i + 1 < ve.path.size(); ++i)
            if (kept.count(ve.path[i]) || vertices.erase(ve.path[i]) != 1)
                return false;
        if (!edges.insert(ve.edge).second)
            return false;
    }
    const std::set<Edge> z_edges(t.z.edges().begin(), t.z.edges().end());
    const std::set<VertexId> z_vertices(t.z.vertices().begin(), t.z.vertices().end());
    return edges == z_edges && vertices == z_vertices;
}

// Node kinds, torso shapes and the witness contraction of one tree.
void check_conforming(const TriBlockTree &tb, Outcome &o, const std::string &tag)
{
    std::map<Edge, int> owners;
    for (std::size_t i = 0; i < tb.nodes.size(); ++i) {
        const auto &n = tb.nodes[i];
        if (n.kind != NodeKind::CutPoint)
            for (const Edge &e : n.edges)
                ++owners[e];
        if (n.kind == NodeKind::CutPoint || n.kind == NodeKind::Hinge)
            continue;
        if (n.kind != NodeKind::Cycle && n.kind != NodeKind::ThreeConnected) {
            o.fail(tag + " node " + std::to_string(i) + " unclassified");
            continue;
        }
        if (!tb.torsos[i]) {
            o.fail(tag + " node " + std::to_string(i) + " without torso");
            continue;
        }
        const Graph &z = tb.torsos[i]->z;
        if (n.kind == NodeKind::Cycle && !is_cycle_by_degrees(z))
            o.fail(tag + " node " + std::to_string(i) + " is not a cycle");
        if (n.kind == NodeKind::ThreeConnected) {
            const bool ok = z.vertex_count() <= 4 ? is_complete(z) : oracle::k_connected_by_cutsets(z, 3);
            if (!ok)
                o.fail(tag + " node " + std::to_string(i) + " is not 3-connected");
        }
        if (!contracts_explicitly(*tb.torsos[i]))
            o.fail(tag + " node " + std::to_string(i) + " witness does not contract");
    }
    if (owners.size() != tb.host->edge_count())
        o.fail(tag + " some edge lies in no torso");
    for (const auto &[e, count] : owners)
        if (count != 1)
            o.fail(tag + " edge " + to_string(e) + " in " + std::to_string(count) + " torsos");
}

bool sorted_includes(const auto &big, const auto &small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool contained(const Separation &a, const Separation &b)
{
    return sorted_includes(b.edges(), a.edges()) && sorted_includes(b.vertices(), a.vertices());
}

std::vector<Graph> two_connected_corpus()
{
    std::mt19937_64 rng(1002);
    std::vector<Graph> out;
    for (std::size_t i = 0; i < corpus_nested; ++i) {
        const Graph base = oracle::random_two_connected(rng, 4 + i % 7);
        if (i % 2 == 0) {
            out.push_back(base);
            continue;
        }
        // Extra chords keep the graph 2-connected and make nonplanar hosts common.
        std::vector<std::pair<VertexId, VertexId>> pairs;
        for (const Edge &e : base.edges())
            pairs.emplace_back(e.u, e.v);
        const std::size_t n = base.vertex_count();
        std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
        for (std::size_t k = 0; k < 2 * n; ++k) {
            const VertexId a = pick(rng);
            const VertexId b = pick(rng);
            if (a != b && !base.adjacent(a, b))
                pairs.emplace_back(a, b);
        }
        std::sort(pairs.begin(), pairs.end(), [](auto x, auto y) { return make_edge(x.first, x.second) < make_edge(y.first, y.second); });
        pairs.erase(std::unique(pairs.begin(), pairs.end(),
                                [](auto x, auto y) { return make_edge(x.first, x.second) == make_edge(y.first, y.second); }),
                    pairs.end());
        out.push_back(oracle::from_pairs(pairs, n));
    }
    return out;
}

// Independent face tracer: the successor of dart u->v is v->w, with w
// following u in the rotation at v.
std::size_t trace_faces(const RotationSystem &r, std::size_t *total_length)
{
    const Graph &g = r.host;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::size_t faces = 0;
    *total_length = 0;
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (std::size_t v : r.rotation[u]) {
            if (seen.count({u, v}))
                continue;
            ++faces;
            std::size_t a = u;
            std::size_t b = v;
            while (seen.insert({a, b}).second) {
                ++*total_length;
                const auto &rot = r.rotation[b];
                const auto at = std::find(rot.begin(), rot.end(), a) - rot.begin();
                const std::size_t c = rot[(static_cast<std::size_t>(at) + 1) % rot.size()];
                a = b;
                b = c;
            }
        }
    return faces;
}

Outcome criterion_blocks()
{
    Outcome o;
    std::mt19937_64 rng(1001);
    for (std::size_t i = 0; i < corpus_blocks; ++i) {
        const Graph g = oracle::random_connected(rng, 2 + i % 13, i % 9);
        const auto b = block_cut_tree(share(g));
        std::vector<std::vector<Edge>> blocks;
        std::vector<VertexId> cuts;
        for (const auto &n : b.nodes) {
            if (n.kind == NodeKind::Block) {
                auto e = n.edges;
                std::sort(e.begin(), e.end());
                blocks.push_back(e);
            } else if (n.kind == NodeKind::CutPoint) {
                cuts.push_back(n.vertices.front());
            }
        }
        std::sort(blocks.begin(), blocks.end());
        std::sort(cuts.begin(), cuts.end());
        const std::string tag = "graph " + std::to_string(i);
        if (blocks != oracle::biconnected_components(g))
            o.fail(tag + ": blocks differ from lowpoint oracle");
        if (cuts != oracle::articulation_points(g))
            o.fail(tag + ": cut points differ");
        std::size_t covered = 0;
        for (const auto &bl : blocks)
            covered += bl.size();
        if (covered != g.edge_count())
            o.fail(tag + ": blocks do not partition the edges");
        for (const auto &l : b.links)
            if ((b.nodes[l.from].kind == NodeKind::CutPoint) == (b.nodes[l.to].kind == NodeKind::CutPoint))
                o.fail(tag + ": link joins two nodes of one kind");
        if (b.links.size() + 1 != b.nodes.size())
            o.fail(tag + ": not a tree");
    }
    o.detail = o.detail.empty() ? std::to_string(corpus_blocks) + " graphs" : o.detail;
    return o;
}

Outcome criterion_nesting(const std::vector<Graph> &corpus, const std::vector<TriBlockTree> &trees)
{
    Outcome o;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto &f = trees[i].family;
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) {
                ++pairs;
                const Separation as = f[a].complement();
                const Separation bs = f[b].complement();
                if (!(contained(f[a], f[b]) || contained(f[a], bs) || contained(as, f[b]) || contained(as, bs)))
                    o.fail("graph " + std::to_string(i) + ": elements " + std::to_string(a) + ", " +
                           std::to_string(b) + " cross");
            }
    }
    if (o.pass)
        o.detail = std::to_string(pairs) + " pairs";
    return o;
}

Outcome criterion_torsos(const std::vector<TriBlockTree> &trees)
{
    Outcome o;
    std::size_t torsos = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        check_conforming(trees[i], o, "graph " + std::to_string(i));
        for (const auto &t : trees[i].torsos)
            torsos += t.has_value();
    }
    if (o.pass)
        o.detail = std::to_string(torsos) + " torsos";
    return o;
}

Outcome criterion_planarity(const std::vector<Graph> &corpus, const std::vector<TriBlockTree> &trees)
{
    Outcome o;
    std::size_t planar = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto r = planarity_test(corpus[i]);
        bool some_nonplanar = false;
        for (const auto &t : trees[i].torsos)
            if (t && !planarity_test(t->z).planar)
                some_nonplanar = true;
        if (r.planar) {
            ++planar;
            if (some_nonplanar)
                o.fail("graph " + std::to_string(i) + ": planar host with nonplanar torso");
        } else {
            bool witness_ok = is_kuratowski_subdivision(r.witness);
            for (const Edge &e : r.witness.edges())
                witness_ok = witness_ok && corpus[i].adjacent(e.u, e.v);
            if (!some_nonplanar && !witness_ok)
                o.fail("graph " + std::to_string(i) + ": nonplanar without certificate");
        }
    }
    if (o.pass)
        o.detail = std::to_string(planar) + " planar, " + std::to_string(corpus.size() - planar) + " nonplanar";
    return o;
}

Outcome criterion_facial()
{
    Outcome o;
    const std::vector<std::pair<std::string, Graph>> graphs = {
        {"K4", oracle::complete(4)}, {"Q3", oracle::cube()},      {"prism", oracle::prism()},
        {"W5", oracle::wheel(5)},    {"W6", oracle::wheel(6)},     {"W7", oracle::wheel(7)},
        {"octahedron", oracle::octahedron()}};
    std::size_t checked = 0;
    for (const auto &[name, g] : graphs) {
        const auto r = planarity_test(g);
        if (!r.planar) {
            o.fail(name + " reported nonplanar");
            continue;
        }
        const auto h = automorphism_group(g);
        const auto brute = oracle::automorphisms_by_permutations(g);
        if (h.order != brute.size())
            o.fail(name + ": group order " + std::to_string(h.order) + " vs " + std::to_string(brute.size()));
        for (const auto &p : brute) {
            ++checked;
            if (!facial_preservation_check(*r.embedding, p))
                o.fail(name + ": an automorphism breaks a face");
        }
        const auto u = face_multiset_uniqueness_check(g);
        if (!u.exhaustive || !u.unique())
            o.fail(name + ": face multiset not unique across relabelings");
    }
    if (o.pass)
        o.detail = std::to_string(checked) + " automorphisms";
    return o;
}

Outcome criterion_euler()
{
    Outcome o;
    std::size_t planar = 0;
    auto check = [&](const std::string &name, const Graph &g, std::optional<std::size_t> expected) {
        const auto r = planarity_test(g);
        if (!r.planar)
            return;
        ++planar;
        const long v = static_cast<long>(g.vertex_count());
        const long e = static_cast<long>(g.edge_count());
        std::size_t total = 0;
        const std::size_t traced = trace_faces(*r.embedding, &total);
        const long f = static_cast<long>(traced);
        if (v - e + f != 2)
            o.fail(name + ": V - E + F = " + std::to_string(v - e + f));
        if (total != 2 * g.edge_count())
            o.fail(name + ": face lengths sum to " + std::to_string(total));
        if (r.faces.size() != traced)
            o.fail(name + ": library reports " + std::to_string(r.faces.size()) + " faces, traced " +
                   std::to_string(traced));
        // Euler arithmetic: F = 2 - V + E.
        if (expected && traced != *expected)
            o.fail(name + ": " + std::to_string(traced) + " faces, expected " + std::to_string(*expected));
    };
    check("K4", oracle::complete(4), 2 - 4 + 6);
    check("Q3", oracle::cube(), 2 - 8 + 12);
    check("octahedron", oracle::octahedron(), 2 - 6 + 12);
    for (const auto &p : fixtures(".edges")) {
        const Graph g = parse_edge_list(read_file(p));
        if (is_connected(g))
            check(p.filename().string(), g, std::nullopt);
    }
    if (o.pass)
        o.detail = std::to_string(planar) + " embeddings";
    return o;
}

Outcome criterion_cayley()
{
    Outcome o;
    struct Case {
        std::vector<int> exponents;
        std::size_t order;
        bool even_only;
    };
    for (const Case &c : {Case{{2, 3, 3}, 12, true}, Case{{2, 3, 4}, 24, false}}) {
        const std::string name = "(" + std::to_string(c.exponents[0]) + "," + std::to_string(c.exponents[1]) + "," +
                                 std::to_string(c.exponents[2]) + ")";
        const auto pr = surface_presentation(0, c.exponents, 0);
        const auto t = coset_enumerate(pr, 100000);
        if (t.order != c.order)
            o.fail(name + ": order " + std::to_string(t.order));
        if (!oracle::triangle_group_realized(oracle::all_perms(4, c.even_only), c.exponents[0], c.exponents[1],
                                             c.exponents[2], c.order))
            o.fail(name + ": permutation oracle finds no group of order " + std::to_string(c.order));
        const Graph g = cayley_graph(t, pr);

        // Left multiplications: automorphisms, fixed-point free, transitive.
        const auto action = regular_action(t);
        std::set<std::size_t> images;
        for (std::size_t h = 0; h < action.size(); ++h) {
            const auto &p = action[h];
            images.insert(p[t.identity]);
            for (const Edge &e : g.edges())
                if (!g.adjacent(g.vertex_at(p[g.index_of(e.u)]), g.vertex_at(p[g.index_of(e.v)])))
                    o.fail(name + ": left multiplication breaks an edge");
            if (h != t.identity)
                for (std::size_t x = 0; x < p.size(); ++x)
                    if (p[x] == x)
                        o.fail(name + ": non-identity element fixes a vertex");
        }
        if (images.size() != t.order)
            o.fail(name + ": action not transitive");
        if (vertex_orbits(g, automorphism_generators_only(g).generators).size() != 1)
            o.fail(name + ": graph not vertex-transitive");
        if (!planarity_test(g).planar)
            o.fail(name + ": Cayley graph not planar");
        check_conforming(triblock_tree(g), o, name);
    }
    if (o.pass)
        o.detail = "orders 12 and 24";
    return o;
}

Outcome criterion_structure_tree()
{
    Outcome o;
    std::mt19937_64 rng(1008);
    std::size_t largest = 0;
    for (std::size_t round = 0; round < corpus_families; ++round) {
        auto host = share(oracle::random_split_tree(rng, 8 + round % 33));
        std::vector<std::pair<VertexId, VertexId>> darts;
        for (VertexId x : host->vertices())
            if (host->degree(x) >= 2)
                for (VertexId y : host->neighbors(x))
                    darts.emplace_back(x, y);
        std::shuffle(darts.begin(), darts.end(), rng);
        darts.resize(std::min<std::size_t>(1 + round % 30, darts.size()));
        std::vector<Separation> elements;
        for (auto [x, y] : darts)
            elements.push_back(Separation::from_edges(host, oracle::tree_branch(*host, x, y)));
        const auto f = NestedFamily::from(std::move(elements));
        largest = std::max(largest, f.size());
        const std::string tag = "family " + std::to_string(round);
        if (f.size() > 60)
            o.fail(tag + ": more than 60 elements");
        const auto t = build_structure_tree(f);
        if (t.edge_count() != f.size())
            o.fail(tag + ": directed edges do not match elements");
        for (std::size_t i = 0; i < t.edge_count(); ++i) {
            if (t.reversal[i] != f.complement_of(i))
                o.fail(tag + ": reversal is not the complement");
            if (t.tail[t.reversal[i]] != t.head[i] || t.head[t.reversal[i]] != t.tail[i])
                o.fail(tag + ": reversal does not swap ends");
        }
        if (t.vertex_count() != t.edge_count() / 2 + 1)
            o.fail(tag + ": not a tree");
        if (oracle::tilde_classes(f.elements()).size() != t.vertex_count())
            o.fail(tag + ": vertex count differs from the equivalence classes");
        const auto report = verify_tree_correspondence(t, f);
        if (!report.empty())
            o.fail(tag + ": " + report.front());
    }
    if (o.pass)
        o.detail = std::to_string(corpus_families) + " families, largest " + std::to_string(largest);
    return o;
}

std::pair<int, std::string> run_process(const std::string &command)
{
    std::string out;
    FILE *pipe = popen(command.c_str(), "r");
    if (!pipe)
        return {-1, out};
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    return {pclose(pipe), out};
}

Outcome criterion_determinism()
{
    Outcome o;
    std::vector<std::string> invocations;
    const std::vector<std::string> commands = {"blocks", "triblocks", "planar", "faces",
                                               "autos",  "quotient",  "cayley", "check"};
    std::vector<std::filesystem::path> files = fixtures(".edges");
    const auto pres = fixtures(".pres");
    files.insert(files.end(), pres.begin(), pres.end());
    for (const auto &f : files)
        for (const auto &c : commands) {
            const std::string base = std::string(PBLOCKS_CLI) + " " + c + " '" + f.string() + "'";
            invocations.push_back(base);
            invocations.push_back(base + " --format text");
            if (c == "blocks" || c == "triblocks")
                invocations.push_back(base + " --format dot");
            if (f.extension() == ".edges" && c != "cayley")
                invocations.push_back(base + " --per-component");
        }
    for (const auto &cmd : invocations) {
        const auto first = run_process(cmd + " 2>&1");
        for (int k = 1; k < determinism_runs; ++k)
            if (run_process(cmd + " 2>&1") != first) {
                o.fail("differs: " + cmd.substr(cmd.find(' ') + 1));
                break;
            }
    }
    if (o.pass)
        o.detail = std::to_string(invocations.size()) + " invocations x " + std::to_string(determinism_runs);
    return o;
}

} // namespace

int main()
{
    int failures = 0;
    auto report = [&](int id, const char *name, const std::function<Outcome()> &fn, double budget) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (budget > 0 && secs > budget)
            o.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(budget) + " s");
        failures += !o.pass;
        std::printf("criterion %d: %s  %s (%s, %.2f s)\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    };

    report(1, "block-cut correctness", criterion_blocks, budget_blocks);

    const auto corpus = two_connected_corpus();
    std::vector<TriBlockTree> trees;
    std::string build_error;
    for (const auto &g : corpus) {
        try {
            trees.push_back(triblock_tree(g));
        } catch (const std::exception &e) {
            build_error = e.what();
            break;
        }
    }
    auto on_corpus = [&](auto fn) {
        return [&, fn]() -> Outcome {
            if (!build_error.empty()) {
                Outcome o;
                o.fail("triblock_tree failed: " + build_error);
                return o;
            }
            return fn();
        };
    };
    report(2, "nesting soundness", on_corpus([&] { return criterion_nesting(corpus, trees); }), 0);
    report(3, "torso classification", on_corpus([&] { return criterion_torsos(trees); }), 0);
    report(4, "planarity inheritance", on_corpus([&] { return criterion_planarity(corpus, trees); }), 0);
    report(5, "facial preservation", criterion_facial, budget_facial);
    report(6, "euler and face partition", criterion_euler, 0);
    report(7, "cayley pipeline", criterion_cayley, budget_cayley);
    report(8, "structure-tree bijection", criterion_structure_tree, 0);
    report(9, "cli determinism", criterion_determinism, 0);
    return failures == 0 ? 0 : 1;
}
