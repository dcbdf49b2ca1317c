#include "pblocks/planar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "pblocks/connectivity.hpp"
#include "pblocks/error.hpp"

namespace pblocks {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

std::size_t position(const std::vector<std::size_t> &cycle, std::size_t x)
{
    return static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), x) - cycle.begin());
}

bool boost_planar(const Graph &g)
{
    BoostGraph bg(g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        boost::add_edge(a, b, bg);
    }
    return boost::boyer_myrvold_planarity_test(bg);
}

Graph without_edge(const std::vector<Edge> &edges, std::size_t skip)
{
    std::vector<Edge> rest;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (i != skip)
            rest.push_back(edges[i]);
    return Graph::from_edges(std::span<const Edge>(rest));
}

// Boost's isolator can leave dangling paths; strip them, and if that is
// not enough drop every edge whose removal keeps the subgraph nonplanar.
Graph tidy_witness(std::vector<Edge> edges)
{
    for (bool changed = true; changed;) {
        changed = false;
        const Graph h = Graph::from_edges(std::span<const Edge>(edges));
        std::vector<Edge> kept;
        for (const Edge &e : edges)
            if (h.degree(e.u) > 1 && h.degree(e.v) > 1)
                kept.push_back(e);
        changed = kept.size() != edges.size();
        edges = std::move(kept);
    }
    Graph h = Graph::from_edges(std::span<const Edge>(edges));
    if (kuratowski_type(h) != KuratowskiType::None)
        return h;
    for (std::size_t i = 0; i < edges.size();) {
        if (!boost_planar(without_edge(edges, i)))
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return Graph::from_edges(std::span<const Edge>(edges));
}

} // namespace

std::optional<std::string> validate(const RotationSystem &r)
{
    const Graph &g = r.host;
    if (r.rotation.size() != g.vertex_count())
        return "rotation has " + std::to_string(r.rotation.size()) + " entries for " +
               std::to_string(g.vertex_count()) + " vertices";
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        auto sorted = r.rotation[i];
        std::sort(sorted.begin(), sorted.end());
        const auto nb = g.neighbors_of(i);
        if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end()))
            return "rotation at vertex " + std::to_string(g.vertex_at(i)) + " is not a permutation of its neighbours";
    }
    return std::nullopt;
}

std::vector<FacialWalk> facial_walks(const RotationSystem &r)
{
    if (auto bad = validate(r))
        throw Error(ErrorKind::MalformedInput, "invalid rotation system", *bad);
    const Graph &g = r.host;
    std::vector<FacialWalk> walks;
    if (g.edge_count() == 0) {
        for (VertexId v : g.vertices())
            walks.push_back({v});
        return walks;
    }
    // used[i][k]: directed edge from i to rotation[i][k] already traced.
    std::vector<std::vector<bool>> used(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        used[i].assign(r.rotation[i].size(), false);
    for (std::size_t s = 0; s < g.vertex_count(); ++s)
        for (std::size_t k = 0; k < r.rotation[s].size(); ++k) {
            if (used[s][k])
                continue;
            FacialWalk walk;
            std::size_t u = s;
            std::size_t slot = k;
            while (!used[u][slot]) {
                used[u][slot] = true;
                walk.push_back(g.vertex_at(u));
                const std::size_t v = r.rotation[u][slot];
                const auto &rot = r.rotation[v];
                slot = (position(rot, u) + 1) % rot.size();
                u = v;
            }
            walks.push_back(std::move(walk));
        }
    return walks;
}

FacialWalk canonical_walk(const FacialWalk &w)
{
    if (w.empty())
        return w;
    FacialWalk best = w;
    FacialWalk rev(w.rbegin(), w.rend());
    for (const FacialWalk *base : {&w, static_cast<const FacialWalk *>(&rev)})
        for (std::size_t k = 0; k < base->size(); ++k) {
            FacialWalk cand(base->begin() + static_cast<std::ptrdiff_t>(k), base->end());
            cand.insert(cand.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(k));
            if (cand < best)
                best = std::move(cand);
        }
    return best;
}

int orientable_genus(const RotationSystem &r)
{
    const auto faces = facial_walks(r);
    const long chi = static_cast<long>(r.host.vertex_count()) - static_cast<long>(r.host.edge_count()) +
                     static_cast<long>(faces.size());
    return static_cast<int>((2 - chi) / 2);
}

PlanarityResult planarity_test(const Graph &g)
{
    if (!is_connected(g))
        throw Error(ErrorKind::NotConnected, "planarity test needs a connected graph");
    const std::size_t n = g.vertex_count();
    BoostGraph bg(n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        auto added = boost::add_edge(a, b, bg).first;
        boost::put(boost::edge_index, bg, added, static_cast<int>(e));
    }
    std::vector<std::vector<BoostEdge>> storage(n);
    auto embedding = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));
    std::vector<BoostEdge> kuratowski;
    const bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg, boost::boyer_myrvold_params::embedding = embedding,
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

    PlanarityResult result;
    result.planar = planar;
    if (planar) {
        RotationSystem r;
        r.host = g;
        r.rotation.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            for (const BoostEdge &e : storage[i]) {
                const auto s = boost::source(e, bg);
                const auto t = boost::target(e, bg);
                r.rotation[i].push_back(s == i ? t : s);
            }
        result.faces = facial_walks(r);
        result.embedding = std::move(r);
        const long euler = static_cast<long>(n) - static_cast<long>(g.edge_count()) +
                           static_cast<long>(result.faces.size());
        if (n > 0 && euler != 2)
            throw Error(ErrorKind::InternalInvariant, "embedding violates Euler's formula",
                        "V-E+F=" + std::to_string(euler));
    } else {
        std::vector<Edge> edges;
        for (const BoostEdge &e : kuratowski)
            edges.push_back(make_edge(g.vertex_at(boost::source(e, bg)), g.vertex_at(boost::target(e, bg))));
        result.witness = tidy_witness(std::move(edges));
    }
    return result;
}

KuratowskiType kuratowski_type(const Graph &h)
{
    const std::size_t n = h.vertex_count();
    if (n < 5 || !is_connected(h))
        return KuratowskiType::None;
    std::vector<std::size_t> branch;
    std::size_t branch_degree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = h.degree_of(i);
        if (d == 2)
            continue;
        if (d < 2 || (branch_degree != 0 && d != branch_degree))
            return KuratowskiType::None;
        branch_degree = d;
        branch.push_back(i);
    }
    const bool k5 = branch_degree == 4 && branch.size() == 5;
    const bool k33 = branch_degree == 3 && branch.size() == 6;
    if (!k5 && !k33)
        return KuratowskiType::None;

    std::map<std::size_t, std::size_t> id;
    for (std::size_t b : branch)
        id.emplace(b, id.size());
    std::set<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t b : branch)
        for (std::size_t next : h.neighbors_of(b)) {
            std::size_t prev = b;
            std::size_t cur = next;
            while (h.degree_of(cur) == 2) {
                const auto nb = h.neighbors_of(cur);
                const std::size_t step = nb[0] == prev ? nb[1] : nb[0];
                prev = cur;
                cur = step;
            }
            if (cur == b)
                return KuratowskiType::None;
            links.emplace(std::min(id[b], id[cur]), std::max(id[b], id[cur]));
        }
    // Each branch path is seen once from each end; a parallel path would
    // leave fewer distinct links than the degree sum requires.
    if (links.size() * 2 != branch.size() * branch_degree)
        return KuratowskiType::None;
    if (k5)
        return links.size() == 10 ? KuratowskiType::K5 : KuratowskiType::None;

    std::vector<int> side(6, -1);
    side[0] = 0;
    for (int pass = 0; pass < 6; ++pass)
        for (auto [a, b] : links) {
            if (side[a] >= 0 && side[b] < 0)
                side[b] = 1 - side[a];
            else if (side[b] >= 0 && side[a] < 0)
                side[a] = 1 - side[b];
        }
    for (auto [a, b] : links)
        if (side[a] < 0 || side[a] == side[b])
            return KuratowskiType::None;
    if (std::count(side.begin(), side.end(), 0) != 3)
        return KuratowskiType::None;
    return links.size() == 9 ? KuratowskiType::K33 : KuratowskiType::None;
}

bool facial_preservation_check(const RotationSystem &r, const Permutation &sigma)
{
    if (!is_automorphism(r.host, sigma))
        throw Error(ErrorKind::NotAnAutomorphism, "permutation is not an automorphism of the host");
    const auto walks = facial_walks(r);
    std::set<FacialWalk> faces;
    for (const auto &w : walks)
        faces.insert(canonical_walk(w));
    for (const auto &w : walks) {
        FacialWalk image;
        for (VertexId v : w)
            image.push_back(r.host.vertex_at(sigma[r.host.index_of(v)]));
        if (!faces.count(canonical_walk(image)))
            return false;
    }
    return true;
}

FaceUniquenessReport face_multiset_uniqueness_check(const Graph &g, std::size_t cap, std::uint64_t seed)
{
    const std::size_t n = g.vertex_count();
    if (n > 10)
        throw Error(ErrorKind::PreconditionViolated, "face uniqueness check is limited to 10 vertices");
    const bool three_connected = (n == 4 && g.edge_count() == 6) || is_k_connected(g, 3);
    if (!three_connected)
        throw Error(ErrorKind::PreconditionViolated, "graph is not 3-connected");
    auto base = planarity_test(g);
    if (!base.planar)
        throw Error(ErrorKind::PreconditionViolated, "graph is not planar");

    FaceUniquenessReport report;
    auto sizes_of = [](const std::vector<FacialWalk> &faces) {
        std::vector<std::size_t> s;
        for (const auto &f : faces)
            s.push_back(f.size());
        std::sort(s.begin(), s.end());
        return s;
    };
    auto face_set = [](const std::vector<FacialWalk> &faces) {
        std::set<FacialWalk> s;
        for (const auto &f : faces)
            s.insert(canonical_walk(f));
        return s;
    };
    report.face_sizes = sizes_of(base.faces);
    const auto reference = face_set(base.faces);

    auto run = [&](const std::vector<std::size_t> &pi) {
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [a, b] = g.endpoints(e);
            edges.push_back(make_edge(static_cast<VertexId>(pi[a]), static_cast<VertexId>(pi[b])));
        }
        std::vector<VertexId> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        const Graph relabelled = Graph::from_edges(std::span<const Edge>(edges), ids);
        auto res = planarity_test(relabelled);
        ++report.relabelings;
        if (!res.planar) {
            report.sizes_agree = report.faces_agree = false;
            return;
        }
        if (sizes_of(res.faces) != report.face_sizes)
            report.sizes_agree = false;
        std::vector<std::size_t> back(n);
        for (std::size_t i = 0; i < n; ++i)
            back[pi[i]] = i;
        std::vector<FacialWalk> mapped;
        for (const auto &f : res.faces) {
            FacialWalk w;
            for (VertexId v : f)
                w.push_back(g.vertex_at(back[v]));
            mapped.push_back(std::move(w));
        }
        if (face_set(mapped) != reference)
            report.faces_agree = false;
    };

    std::vector<std::size_t> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    double total = 1;
    for (std::size_t k = 2; k <= n; ++k)
        total *= static_cast<double>(k);
    if (total <= static_cast<double>(cap)) {
        report.exhaustive = true;
        do
            run(pi);
        while (std::next_permutation(pi.begin(), pi.end()));
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < cap; ++k) {
            std::shuffle(pi.begin(), pi.end(), rng);
            run(pi);
        }
    }
    return report;
}

} // namespace pblocks
