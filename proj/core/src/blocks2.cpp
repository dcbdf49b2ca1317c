#include "pblocks/blocks2.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "pblocks/connectivity.hpp"
#include "pblocks/error.hpp"
#include "pblocks/symmetry.hpp"

namespace pblocks {

namespace {

constexpr std::size_t max_pieces = 20;

void require_two_block(const Graph &g)
{
    if (g.vertex_count() < 4)
        throw Error(ErrorKind::PreconditionViolated, "graph has fewer than 4 vertices");
    if (!is_k_connected(g, 2))
        throw Error(ErrorKind::PreconditionViolated, "graph is not 2-connected");
    if (is_cycle(g))
        throw Error(ErrorKind::PreconditionViolated, "graph is a cycle");
}

std::vector<Separation> separations_at_pair(const std::shared_ptr<const Graph> &g, std::size_t u, std::size_t w)
{
    const Graph &x = *g;
    std::vector<bool> removed(x.vertex_count(), false);
    removed[u] = removed[w] = true;
    int count = 0;
    const auto label = component_labels(x, removed, &count);
    std::vector<Bits> pieces(static_cast<std::size_t>(count), Bits(x.edge_count()));
    std::optional<std::size_t> direct;
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        auto [a, b] = x.endpoints(e);
        const int c = label[a] >= 0 ? label[a] : label[b];
        if (c >= 0)
            pieces[static_cast<std::size_t>(c)].set(e);
        else
            direct = e;
    }
    if (direct) {
        pieces.emplace_back(x.edge_count());
        pieces.back().set(*direct);
    }
    std::vector<Separation> out;
    if (pieces.size() < 2)
        return out;
    if (pieces.size() > max_pieces)
        throw Error(ErrorKind::TooLarge, "too many components at a separating pair",
                    std::to_string(x.vertex_at(u)) + " " + std::to_string(x.vertex_at(w)));
    const std::vector<VertexId> hinge{x.vertex_at(u), x.vertex_at(w)};
    const std::uint64_t full = (std::uint64_t{1} << pieces.size()) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        Bits ea(x.edge_count());
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (mask >> i & 1U)
                ea |= pieces[i];
        auto s = Separation::from_edge_mask(g, std::move(ea));
        if (s && s->boundary() == hinge)
            out.push_back(std::move(*s));
    }
    return out;
}

std::vector<Separation> containing(const std::vector<Separation> &all, VertexId x0)
{
    std::vector<Separation> out;
    for (const auto &s : all)
        if (s.contains_vertex(x0))
            out.push_back(s);
    return out;
}

// Picks the canonical minimum and checks, by walking a strictly decreasing
// chain from the largest candidate, that descending chains stay bounded.
Separation minimal_of(const std::vector<Separation> &candidates)
{
    Separation cur = candidates.back();
    std::size_t steps = 0;
    for (;;) {
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const Separation &c) { return c.proper_subset_of(cur); });
        if (it == candidates.end())
            break;
        cur = *it;
        if (++steps > candidates.size())
            throw Error(ErrorKind::InternalInvariant, "descending chain of separations does not stabilize");
    }
    const Separation &best = candidates.front();
    for (const auto &c : candidates)
        if (c.proper_subset_of(best))
            throw Error(ErrorKind::InternalInvariant, "canonical minimum is not inclusion-minimal", best.describe());
    return best;
}

std::vector<VertexId> path_inside(const Graph &host, const Bits &edges, VertexId p, VertexId q)
{
    const std::size_t n = host.vertex_count();
    const std::size_t s = host.index_of(p);
    const std::size_t t = host.index_of(q);
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> prev(n, none);
    std::deque<std::size_t> queue{s};
    prev[s] = s;
    while (!queue.empty() && prev[t] == none) {
        const std::size_t a = queue.front();
        queue.pop_front();
        const auto nb = host.neighbors_of(a);
        const auto inc = host.incident_of(a);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (!edges.test(inc[k]) || prev[nb[k]] != none)
                continue;
            // Never walk through the other end before arriving at it.
            prev[nb[k]] = a;
            if (nb[k] != t)
                queue.push_back(nb[k]);
        }
    }
    if (prev[t] == none)
        return {};
    std::vector<VertexId> path;
    for (std::size_t c = t; c != s; c = prev[c])
        path.push_back(host.vertex_at(c));
    path.push_back(p);
    std::reverse(path.begin(), path.end());
    return path;
}

struct TorsoData {
    Torso torso;
    std::shared_ptr<const Graph> z;
    std::vector<Bits> representative;         // z edge index -> host edges it stands for
    std::map<VertexId, Bits> hanging;         // host edges hanging off a single torso vertex
};

TorsoData build_torso(const Graph &host, const NestedFamily &f, const StructureTree &t, std::size_t v)
{
    TorsoData d;
    d.torso.tree_vertex = v;
    const auto core = vertex_core(host, f, t.members[v]);
    std::vector<std::size_t> core_edges;
    for (auto e = core.edges.find_first(); e != Bits::npos; e = core.edges.find_next(e))
        core_edges.push_back(e);
    std::vector<VertexId> core_vertices;
    for (auto i = core.vertices.find_first(); i != Bits::npos; i = core.vertices.find_next(i))
        core_vertices.push_back(host.vertex_at(i));
    d.torso.z_prime = edge_subgraph(host, core_edges, core_vertices);

    std::map<Edge, std::size_t> virtual_index;
    std::map<Edge, Bits> sides;
    for (std::size_t m : t.members[v]) {
        const Separation &s = f[m];
        const auto &b = s.boundary();
        if (b.size() == 1) {
            auto [it, fresh] = d.hanging.try_emplace(b[0], host.edge_count());
            it->second |= s.edge_mask();
            continue;
        }
        const Edge pq = make_edge(b[0], b[1]);
        auto [it, fresh] = sides.try_emplace(pq, host.edge_count());
        it->second |= s.edge_mask();
        if (d.torso.z_prime.adjacent(pq.u, pq.v))
            continue;
        auto vit = virtual_index.find(pq);
        if (vit == virtual_index.end()) {
            VirtualEdge ve;
            ve.edge = pq;
            ve.path = path_inside(host, s.edge_mask(), pq.u, pq.v);
            virtual_index.emplace(pq, d.torso.virtual_edges.size());
            d.torso.virtual_edges.push_back(std::move(ve));
            vit = virtual_index.find(pq);
        }
        d.torso.virtual_edges[vit->second].members.push_back(m);
    }

    std::vector<Edge> z_edges = d.torso.z_prime.edges();
    std::vector<Edge> w_edges = d.torso.z_prime.edges();
    for (const auto &ve : d.torso.virtual_edges) {
        z_edges.push_back(ve.edge);
        for (std::size_t k = 0; k + 1 < ve.path.size(); ++k)
            w_edges.push_back(make_edge(ve.path[k], ve.path[k + 1]));
    }
    d.torso.z = Graph::from_edges(std::span<const Edge>(z_edges), core_vertices);
    d.torso.witness = Graph::from_edges(std::span<const Edge>(w_edges), core_vertices);
    d.z = std::make_shared<const Graph>(d.torso.z);

    d.representative.assign(d.z->edge_count(), Bits(host.edge_count()));
    for (std::size_t ze = 0; ze < d.z->edge_count(); ++ze) {
        const Edge &ed = d.z->edge_at(ze);
        if (auto he = host.find_edge(ed.u, ed.v); he && core.edges.test(*he))
            d.representative[ze].set(*he);
        if (auto it = sides.find(ed); it != sides.end())
            d.representative[ze] |= it->second;
    }
    return d;
}

class Enlarger {
public:
    Enlarger(std::shared_ptr<const Graph> host, NestedFamily start) : host_(std::move(host)), family_(std::move(start)) {}

    void run()
    {
        for (;;) {
            const StructureTree t = build_structure_tree(family_);
            std::optional<TorsoData> bad;
            for (std::size_t v = 0; v < t.vertex_count() && !bad; ++v) {
                const auto core = vertex_core(*host_, family_, t.members[v]);
                if (core.vertices.count() == 1 && !t.members[v].empty())
                    continue;
                if (is_hinge_class(*host_, family_, t, v))
                    continue;
                auto d = build_torso(*host_, family_, t, v);
                if (!classify_graph(d.torso.z))
                    bad = std::move(d);
            }
            if (!bad)
                return;
            if (!split(*bad))
                throw Error(ErrorKind::InternalInvariant, "no nested enlargement found for a torso",
                            "tree vertex " + std::to_string(bad->torso.tree_vertex));
            ++rounds_;
        }
    }

    NestedFamily &family() { return family_; }
    std::size_t rounds() const { return rounds_; }
    std::vector<std::string> &log() { return log_; }

private:
    const std::vector<Permutation> &generators()
    {
        if (!generators_)
            generators_ = automorphism_generators(*host_);
        return *generators_;
    }

    std::vector<Separation> lift(const TorsoData &d, const Separation &a) const
    {
        auto side = [&](const Separation &s) {
            Bits mask(host_->edge_count());
            for (auto ze = s.edge_mask().find_first(); ze != Bits::npos; ze = s.edge_mask().find_next(ze))
                mask |= d.representative[ze];
            for (const auto &[x, edges] : d.hanging)
                if (s.contains_vertex(x) && !s.is_boundary(x))
                    mask |= edges;
            return mask;
        };
        std::vector<Separation> out;
        for (const Bits &mask : {side(a), side(a.complement())}) {
            auto s = Separation::from_edge_mask(host_, mask);
            if (!s)
                continue;
            out.push_back(s->complement());
            out.push_back(std::move(*s));
        }
        return out;
    }

    std::vector<Separation> orbit(const std::vector<Separation> &seeds)
    {
        std::set<Separation, decltype(&canonical_less)> seen(&canonical_less);
        std::vector<Separation> out;
        for (const auto &s : seeds)
            if (seen.insert(s).second)
                out.push_back(s);
        const auto &gens = generators();
        for (std::size_t i = 0; i < out.size(); ++i)
            for (const auto &p : gens) {
                Separation img = permute(p, out[i]);
                if (seen.insert(img).second)
                    out.push_back(std::move(img));
            }
        return out;
    }

    bool split(const TorsoData &d)
    {
        const Graph &z = *d.z;
        if (!is_k_connected(z, 2))
            throw Error(ErrorKind::InternalInvariant, "torso is not 2-connected",
                        "tree vertex " + std::to_string(d.torso.tree_vertex));
        const auto all = enumerate_separations(d.z);
        if (all.empty())
            throw Error(ErrorKind::InternalInvariant, "torso has no two-vertex separation",
                        "tree vertex " + std::to_string(d.torso.tree_vertex));
        std::vector<const Separation *> order;
        const auto around_first = containing(all, z.vertex_at(0));
        std::optional<Separation> first;
        if (!around_first.empty()) {
            first = minimal_of(around_first);
            order.push_back(&*first);
        }
        for (const auto &s : all)
            if (!first || !(s == *first))
                order.push_back(&s);

        std::size_t tried = 0;
        for (const Separation *cand : order) {
            ++tried;
            const auto lifted = lift(d, *cand);
            if (lifted.empty())
                continue;
            const auto orb = orbit(lifted);
            std::vector<const Separation *> fresh;
            for (const auto &s : orb)
                if (!family_.contains(s))
                    fresh.push_back(&s);
            if (fresh.empty())
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < fresh.size() && ok; ++i) {
                for (const auto &old : family_.elements())
                    if (!nested(*fresh[i], old).nested()) {
                        ok = false;
                        break;
                    }
                for (std::size_t j = i + 1; j < fresh.size() && ok; ++j)
                    if (!nested(*fresh[i], *fresh[j]).nested())
                        ok = false;
            }
            if (!ok)
                continue;
            std::vector<Separation> merged = family_.elements();
            for (const Separation *s : fresh)
                merged.push_back(*s);
            family_ = NestedFamily::from(std::move(merged));
            log_.push_back("tree vertex " + std::to_string(d.torso.tree_vertex) + ": split along " + cand->describe() +
                           " (candidate " + std::to_string(tried) + "), added " + std::to_string(fresh.size()) +
                           " elements, family size " + std::to_string(family_.size()));
            return true;
        }
        return false;
    }

    std::shared_ptr<const Graph> host_;
    NestedFamily family_;
    std::optional<std::vector<Permutation>> generators_;
    std::size_t rounds_ = 0;
    std::vector<std::string> log_;
};


// Host edges of the parts of X - x that miss the block (given by its
// vertex mask), together with their edges to x.
Bits hanging_at(const Graph &host, std::size_t x, const Bits &block_vertices)
{
    std::vector<bool> removed(host.vertex_count(), false);
    removed[x] = true;
    int count = 0;
    const auto label = component_labels(host, removed, &count);
    std::vector<bool> touches_block(static_cast<std::size_t>(count), false);
    for (std::size_t i = 0; i < host.vertex_count(); ++i)
        if (label[i] >= 0 && block_vertices.test(i))
            touches_block[static_cast<std::size_t>(label[i])] = true;
    Bits out(host.edge_count());
    for (std::size_t e = 0; e < host.edge_count(); ++e) {
        auto [a, b] = host.endpoints(e);
        const int c = label[a] >= 0 ? label[a] : label[b];
        if (c >= 0 && !touches_block[static_cast<std::size_t>(c)])
            out.set(e);
    }
    return out;
}

// Vertex (one entry) or edge (two entries) at the centre of the subtree of
// t spanned by `inside`.
std::vector<std::size_t> subtree_center(const StructureTree &t, std::vector<bool> inside)
{
    const auto out = t.out_edges();
    auto degree = [&](std::size_t v) {
        std::size_t d = 0;
        for (std::size_t e : out[v])
            if (inside[t.head[e]])
                ++d;
        return d;
    };
    std::vector<std::size_t> alive;
    for (std::size_t v = 0; v < inside.size(); ++v)
        if (inside[v])
            alive.push_back(v);
    if (alive.empty())
        throw Error(ErrorKind::InternalInvariant, "cut vertex lies in no torso");
    std::size_t edges = 0;
    for (std::size_t v : alive)
        edges += degree(v);
    if (edges / 2 + 1 != alive.size())
        throw Error(ErrorKind::InternalInvariant, "torsos containing a cut vertex do not form a subtree");
    while (alive.size() > 2) {
        std::vector<std::size_t> leaves;
        for (std::size_t v : alive)
            if (degree(v) <= 1)
                leaves.push_back(v);
        for (std::size_t v : leaves)
            inside[v] = false;
        std::vector<std::size_t> rest;
        for (std::size_t v : alive)
            if (inside[v])
                rest.push_back(v);
        alive = std::move(rest);
    }
    return alive;
}

// Vertices of t on the far side of directed edge e (the side of its head).
std::vector<bool> beyond(const StructureTree &t, std::size_t e)
{
    const auto out = t.out_edges();
    std::vector<bool> seen(t.vertex_count(), false);
    seen[t.head[e]] = true;
    std::vector<std::size_t> stack{t.head[e]};
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t f : out[v])
            if (f != t.reversal[e] && !seen[t.head[f]]) {
                seen[t.head[f]] = true;
                stack.push_back(t.head[f]);
            }
    }
    return seen;
}

bool needs_splitting(const Graph &b)
{
    return b.vertex_count() >= 4 && !classify_graph(b);
}


} // namespace

std::vector<Separation> enumerate_separations(std::shared_ptr<const Graph> g)
{
    std::vector<Separation> out;
    const std::size_t n = g->vertex_count();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t w = u + 1; w < n; ++w) {
            auto part = separations_at_pair(g, u, w);
            out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<Separation> enumerate_separations_at(std::shared_ptr<const Graph> g, VertexId u)
{
    require_two_block(*g);
    const std::size_t ui = g->index_of(u);
    std::vector<Separation> out;
    for (std::size_t w = 0; w < g->vertex_count(); ++w) {
        if (w == ui)
            continue;
        auto part = separations_at_pair(g, std::min(ui, w), std::max(ui, w));
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

Separation minimal_separation_containing(std::shared_ptr<const Graph> g, VertexId x0)
{
    require_two_block(*g);
    g->index_of(x0);
    const auto candidates = containing(enumerate_separations(g), x0);
    if (candidates.empty())
        throw Error(ErrorKind::NoSeparationExists, "no two-vertex separation contains the vertex", std::to_string(x0));
    return minimal_of(candidates);
}

bool is_hinge_class(const Graph &host, const NestedFamily &f, const StructureTree &t, std::size_t v)
{
    const auto core = vertex_core(host, f, t.members[v]);
    if (core.vertices.count() != 2)
        return false;
    const auto first = core.vertices.find_first();
    const std::vector<VertexId> pair{host.vertex_at(first), host.vertex_at(core.vertices.find_next(first))};
    std::size_t across = 0;
    for (std::size_t m : t.members[v]) {
        const auto &b = f[m].boundary();
        if (b.size() != 2)
            continue;
        if (b != pair)
            return false;
        ++across;
    }
    return across >= 2;
}

Torso torso(const Graph &host, const NestedFamily &f, const StructureTree &t, std::size_t v)
{
    if (v >= t.vertex_count())
        throw Error(ErrorKind::PreconditionViolated, "no such tree vertex", std::to_string(v));
    if (is_hinge_class(host, f, t, v))
        throw Error(ErrorKind::HingeVertex, "tree vertex is a hinge and has no torso", std::to_string(v));
    return build_torso(host, f, t, v).torso;
}

std::optional<NodeKind> classify_graph(const Graph &z, bool *tiny)
{
    if (tiny)
        *tiny = false;
    const std::size_t n = z.vertex_count();
    if (is_cycle(z))
        return NodeKind::Cycle;
    if (!is_connected(z))
        return std::nullopt;
    if (n <= 4) {
        if (z.edge_count() != n * (n - (n > 0 ? 1 : 0)) / 2)
            return std::nullopt;
        if (tiny)
            *tiny = true;
        return NodeKind::ThreeConnected;
    }
    if (find_separating_pair(z))
        return std::nullopt;
    return NodeKind::ThreeConnected;
}

bool witness_contracts_to_torso(const Torso &t)
{
    const Graph &w = t.witness;
    std::set<Edge> path_edges;
    std::set<Edge> contracted(t.z_prime.edges().begin(), t.z_prime.edges().end());
    std::set<VertexId> interior_seen;
    for (const auto &ve : t.virtual_edges) {
        const auto &p = ve.path;
        if (p.size() < 2 || make_edge(p.front(), p.back()) != ve.edge)
            return false;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
            if (!w.adjacent(p[k], p[k + 1]))
                return false;
            path_edges.insert(make_edge(p[k], p[k + 1]));
        }
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            if (t.z_prime.has_vertex(p[k]) || !w.has_vertex(p[k]) || w.degree(p[k]) != 2 ||
                !interior_seen.insert(p[k]).second)
                return false;
        }
        contracted.insert(ve.edge);
    }
    std::set<Edge> witness_edges(w.edges().begin(), w.edges().end());
    std::set<Edge> expected(t.z_prime.edges().begin(), t.z_prime.edges().end());
    expected.insert(path_edges.begin(), path_edges.end());
    if (witness_edges != expected)
        return false;
    const std::vector<Edge> ce(contracted.begin(), contracted.end());
    return Graph::from_edges(std::span<const Edge>(ce), t.z_prime.vertices()) == t.z;
}

NestedFamily build_nested_family(std::shared_ptr<const Graph> g)
{
    require_two_block(*g);
    if (!find_separating_pair(*g))
        throw Error(ErrorKind::PreconditionViolated, "graph is 3-connected");
    Enlarger e(g, NestedFamily{});
    e.run();
    return std::move(e.family());
}

namespace {

// Family of X made of the one-vertex separations together with the
// two-separations of each 2-block, each enlarged by the parts of X hanging
// off it. A part hanging at a boundary vertex x goes to the side holding the
// centre of the torsos that contain x; when the centre is an edge of the
// block's tree, both placements are kept.
NestedFamily composed_family(const std::shared_ptr<const Graph> &host, std::size_t &rounds,
                             std::vector<std::string> &log)
{
    const Graph &x = *host;
    const auto bct = block_cut_tree(host);
    std::vector<Separation> elements = bct.family.elements();

    std::vector<bool> is_cut(x.vertex_count(), false);
    for (VertexId c : cut_vertices(x))
        is_cut[x.index_of(c)] = true;

    struct Block {
        std::vector<Edge> edges;
        std::shared_ptr<const Graph> graph;
        Bits vertices;
    };
    std::vector<Block> blocks;
    std::map<std::vector<Edge>, std::size_t> block_of;
    for (const auto &n : bct.nodes) {
        if (n.kind != NodeKind::Block)
            continue;
        Block b;
        b.edges = n.edges;
        std::sort(b.edges.begin(), b.edges.end());
        b.graph = std::make_shared<const Graph>(Graph::from_edges(std::span<const Edge>(b.edges)));
        b.vertices = Bits(x.vertex_count());
        for (VertexId v : b.graph->vertices())
            b.vertices.set(x.index_of(v));
        block_of.emplace(b.edges, blocks.size());
        blocks.push_back(std::move(b));
    }

    // Blocks in one Aut(X)-orbit share a family, transported from the first.
    const auto gens = automorphism_generators(x);
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> rep(blocks.size(), unset);
    std::vector<Permutation> carry(blocks.size());
    auto image = [&](const Permutation &p, const std::vector<Edge> &edges) {
        std::vector<Edge> out;
        for (const Edge &e : edges)
            out.push_back(make_edge(x.vertex_at(p[x.index_of(e.u)]), x.vertex_at(p[x.index_of(e.v)])));
        std::sort(out.begin(), out.end());
        return out;
    };
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (rep[b] != unset)
            continue;
        rep[b] = b;
        carry[b] = identity_permutation(x.vertex_count());
        std::vector<std::size_t> queue{b};
        for (std::size_t k = 0; k < queue.size(); ++k) {
            const std::size_t c = queue[k];
            for (const auto &p : gens) {
                const std::size_t d = block_of.at(image(p, blocks[c].edges));
                if (rep[d] != unset)
                    continue;
                rep[d] = b;
                carry[d] = compose(p, carry[c]);
                queue.push_back(d);
            }
        }
    }

    std::map<std::size_t, NestedFamily> rep_family;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Block &blk = blocks[b];
        if (!needs_splitting(*blk.graph))
            continue;
        NestedFamily fb;
        if (rep[b] == b) {
            Enlarger e(blk.graph, NestedFamily{});
            e.run();
            rounds += e.rounds();
            for (auto &line : e.log())
                log.push_back("block " + std::to_string(b) + ": " + line);
            fb = std::move(e.family());
            rep_family.emplace(b, fb);
        } else {
            std::vector<Separation> moved;
            for (const auto &s : rep_family.at(rep[b]).elements())
                moved.push_back(Separation::from_edges(blk.graph, image(carry[b], s.edges())));
            fb = NestedFamily::from(std::move(moved));
        }
        const Graph &bg = *blk.graph;
        const auto tb = build_structure_tree(fb);

        // Centre of the torsos containing each cut vertex of the block.
        std::map<std::size_t, std::vector<std::size_t>> center;
        std::map<std::size_t, Bits> hang;
        for (std::size_t i = 0; i < bg.vertex_count(); ++i) {
            const std::size_t hx = x.index_of(bg.vertex_at(i));
            if (!is_cut[hx])
                continue;
            std::vector<bool> inside(tb.vertex_count(), false);
            for (std::size_t v = 0; v < tb.vertex_count(); ++v)
                inside[v] = vertex_core(bg, fb, tb.members[v]).vertices.test(i);
            center.emplace(hx, subtree_center(tb, inside));
            hang.emplace(hx, hanging_at(x, hx, blk.vertices));
        }

        for (std::size_t a = 0; a < fb.size(); ++a) {
            const Separation &s = fb[a];
            Bits mask(x.edge_count());
            for (const Edge &e : s.edges())
                mask.set(*x.find_edge(e.u, e.v));
            const auto far = beyond(tb, a);
            Bits ambiguous(x.edge_count());
            for (const auto &[hx, c] : center) {
                const VertexId id = x.vertex_at(hx);
                if (!s.contains_vertex(id))
                    continue;
                if (!s.is_boundary(id)) {
                    mask |= hang.at(hx);
                    continue;
                }
                const bool across = c.size() == 2 && ((tb.tail[a] == c[0] && tb.head[a] == c[1]) ||
                                                      (tb.tail[a] == c[1] && tb.head[a] == c[0]));
                if (across)
                    ambiguous |= hang.at(hx);
                else if (far[c[0]])
                    mask |= hang.at(hx);
            }
            auto lifted = Separation::from_edge_mask(host, mask);
            if (!lifted)
                throw Error(ErrorKind::InternalInvariant, "lifted block separation is invalid", s.describe());
            elements.push_back(std::move(*lifted));
            if (ambiguous.any()) {
                auto both = Separation::from_edge_mask(host, mask | ambiguous);
                if (!both)
                    throw Error(ErrorKind::InternalInvariant, "lifted block separation is invalid", s.describe());
                elements.push_back(std::move(*both));
            }
        }
    }
    auto f = NestedFamily::from(std::move(elements));
    check_nested(f);
    return f;
}

} // namespace

TriBlockTree triblock_tree(const Graph &g, const TriblockOptions &options)
{
    if (!is_connected(g))
        throw Error(ErrorKind::NotConnected, "decomposition needs a connected graph");
    TriBlockTree out;
    if (options.reduce) {
        out.reduction = homeomorphic_reduce(g);
        out.host = std::make_shared<const Graph>(out.reduction->graph);
    } else {
        out.host = std::make_shared<const Graph>(g);
    }
    const Graph &host = *out.host;

    if (cut_vertices(host).empty()) {
        Enlarger e(out.host, NestedFamily{});
        e.run();
        out.family = std::move(e.family());
        out.rounds = e.rounds();
        out.log = std::move(e.log());
    } else {
        out.family = composed_family(out.host, out.rounds, out.log);
    }
    out.tree = build_structure_tree(out.family);

    const std::size_t nv = out.tree.vertex_count();
    std::vector<NodeKind> kind(nv, NodeKind::ThreeConnected);
    std::vector<std::optional<Torso>> torsos(nv);
    std::vector<bool> tiny(nv, false);
    for (std::size_t v = 0; v < nv; ++v) {
        const auto core = vertex_core(host, out.family, out.tree.members[v]);
        if (core.vertices.count() == 1 && !out.tree.members[v].empty()) {
            kind[v] = NodeKind::CutPoint;
            continue;
        }
        if (is_hinge_class(host, out.family, out.tree, v)) {
            kind[v] = NodeKind::Hinge;
            continue;
        }
        Torso tv = build_torso(host, out.family, out.tree, v).torso;
        bool small = false;
        auto k = classify_graph(tv.z, &small);
        if (!k)
            throw Error(ErrorKind::InternalInvariant, "torso is neither a cycle nor 3-connected", std::to_string(v));
        kind[v] = *k;
        tiny[v] = small;
        torsos[v] = std::move(tv);
    }
    assemble_nodes(host, out.family, out.tree, kind, out.nodes, out.links);
    out.torsos.resize(out.nodes.size());
    for (std::size_t v = 0; v < nv; ++v) {
        out.nodes[v].tiny = tiny[v];
        if (torsos[v]) {
            for (const auto &ve : torsos[v]->virtual_edges)
                out.nodes[v].virtual_edges.push_back(ve.edge);
            out.torsos[v] = std::move(torsos[v]);
        }
    }
    return out;
}

} // namespace pblocks
