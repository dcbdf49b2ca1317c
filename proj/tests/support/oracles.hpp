#pragma once

// Independent reference implementations used only by tests. None of these
// call into the decomposition code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pblocks/graph.hpp"
#include "pblocks/separation.hpp"

namespace oracle {

using pblocks::Edge;
using pblocks::Graph;
using pblocks::VertexId;

inline Graph graph(std::initializer_list<std::pair<VertexId, VertexId>> pairs)
{
    std::vector<std::pair<VertexId, VertexId>> v(pairs);
    return Graph::from_edges(v);
}

inline Graph from_pairs(const std::vector<std::pair<VertexId, VertexId>> &pairs, std::size_t n = 0)
{
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    return Graph::from_edges(pairs, ids);
}

// ---------------------------------------------------------------- fixtures

inline Graph complete(std::size_t n)
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            p.emplace_back(a, b);
    return from_pairs(p, n);
}

inline Graph cycle(std::size_t n)
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId a = 0; a < n; ++a)
        p.emplace_back(a, static_cast<VertexId>((a + 1) % n));
    return from_pairs(p, n);
}

inline Graph path(std::size_t n)
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId a = 0; a + 1 < n; ++a)
        p.emplace_back(a, a + 1);
    return from_pairs(p, n);
}

// Hub 0 joined to the rim 1..k.
inline Graph wheel(std::size_t k)
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId i = 1; i <= k; ++i) {
        p.emplace_back(0, i);
        p.emplace_back(i, static_cast<VertexId>(i % k + 1));
    }
    return from_pairs(p, k + 1);
}

inline Graph cube()
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId a = 0; a < 8; ++a)
        for (VertexId bit = 1; bit < 8; bit <<= 1)
            if ((a ^ bit) > a)
                p.emplace_back(a, a ^ bit);
    return from_pairs(p, 8);
}

inline Graph prism()
{
    return graph({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

inline Graph octahedron()
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId a = 0; a < 6; ++a)
        for (VertexId b = a + 1; b < 6; ++b)
            if (b != a + 3 || a >= 3)
                if (!(a < 3 && b == a + 3))
                    p.emplace_back(a, b);
    return from_pairs(p, 6);
}

inline Graph k33()
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId a = 0; a < 3; ++a)
        for (VertexId b = 3; b < 6; ++b)
            p.emplace_back(a, b);
    return from_pairs(p, 6);
}

inline Graph petersen()
{
    std::vector<std::pair<VertexId, VertexId>> p;
    for (VertexId i = 0; i < 5; ++i) {
        p.emplace_back(i, (i + 1) % 5);
        p.emplace_back(i, i + 5);
        p.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return from_pairs(p, 10);
}

inline Graph bowtie()
{
    return graph({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
}

// K4 minus the edge cd, with a=0, b=1, c=2, d=3.
inline Graph k4_minus_edge()
{
    return graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

// ------------------------------------------------------------ random graphs

inline Graph random_gnp(std::mt19937_64 &rng, std::size_t n, double p)
{
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            if (coin(rng))
                pairs.emplace_back(a, b);
    return from_pairs(pairs, n);
}

// Random spanning tree plus extra random edges: always connected.
inline Graph random_connected(std::mt19937_64 &rng, std::size_t n, std::size_t extra)
{
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId v = 1; v < n; ++v) {
        std::uniform_int_distribution<VertexId> pick(0, v - 1);
        pairs.emplace_back(pick(rng), v);
    }
    std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(n - 1));
    for (std::size_t k = 0; k < extra; ++k) {
        VertexId a = any(rng);
        VertexId b = any(rng);
        if (a != b)
            pairs.emplace_back(a, b);
    }
    return from_pairs(pairs, n);
}

// Cycle through a random vertex order plus random chords, or an ear
// decomposition; both are 2-connected.
inline Graph random_two_connected(std::mt19937_64 &rng, std::size_t n)
{
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    if (std::bernoulli_distribution(0.5)(rng)) {
        for (std::size_t i = 0; i < n; ++i)
            pairs.emplace_back(order[i], order[(i + 1) % n]);
        std::uniform_int_distribution<std::size_t> chords(0, n);
        std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(n - 1));
        for (std::size_t k = chords(rng); k > 0; --k) {
            VertexId a = any(rng);
            VertexId b = any(rng);
            if (a != b)
                pairs.emplace_back(a, b);
        }
    } else {
        // Ears: start with a triangle, then attach paths between used vertices.
        pairs = {{order[0], order[1]}, {order[1], order[2]}, {order[2], order[0]}};
        std::size_t used = 3;
        while (used < n) {
            std::uniform_int_distribution<std::size_t> pick(0, used - 1);
            const VertexId a = order[pick(rng)];
            VertexId b = order[pick(rng)];
            while (b == a)
                b = order[pick(rng)];
            const std::size_t len = std::min<std::size_t>(n - used, std::uniform_int_distribution<std::size_t>(1, 3)(rng));
            VertexId prev = a;
            for (std::size_t k = 0; k < len; ++k) {
                pairs.emplace_back(prev, order[used]);
                prev = order[used++];
            }
            pairs.emplace_back(prev, b);
        }
    }
    return from_pairs(pairs, n);
}

// ------------------------------------------------------------- connectivity

inline bool connected_without(const Graph &g, const std::vector<std::size_t> &removed)
{
    const std::size_t n = g.vertex_count();
    std::vector<bool> gone(n, false);
    for (std::size_t r : removed)
        gone[r] = true;
    std::size_t start = n;
    std::size_t alive = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!gone[i]) {
            ++alive;
            if (start == n)
                start = i;
        }
    if (alive == 0)
        return true;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [a, b] = g.endpoints(e);
            std::size_t y = a == x ? b : (b == x ? a : n);
            if (y == n || gone[y] || seen[y])
                continue;
            seen[y] = true;
            ++reached;
            stack.push_back(y);
        }
    }
    return reached == alive;
}

// k-connected by the cutset definition: more than k vertices and no set of
// fewer than k vertices disconnects the graph. (k = 3 additionally needs
// at least 5 vertices, matching the library's convention.)
inline bool k_connected_by_cutsets(const Graph &g, int k)
{
    const std::size_t n = g.vertex_count();
    const std::size_t need = k == 1 ? 1 : (k == 2 ? 3 : 5);
    if (n < need || !connected_without(g, {}))
        return false;
    for (std::size_t a = 0; a < n && k >= 2; ++a) {
        if (!connected_without(g, {a}))
            return false;
        for (std::size_t b = a + 1; b < n && k >= 3; ++b)
            if (!connected_without(g, {a, b}))
                return false;
    }
    return true;
}

// ---------------------------------------------- biconnected components (DFS)

// Edge partition into biconnected components by Hopcroft-Tarjan lowpoints.
// Each component is returned as its sorted edge list; components sorted.
inline std::vector<std::vector<Edge>> biconnected_components(const Graph &g)
{
    const std::size_t n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> estack;
    std::vector<std::vector<Edge>> out;
    int timer = 0;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
        disc[u] = low[u] = timer++;
        for (std::size_t v : g.neighbors_of(u)) {
            if (disc[v] == -1) {
                estack.emplace_back(u, v);
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    std::vector<Edge> comp;
                    for (;;) {
                        auto [a, b] = estack.back();
                        estack.pop_back();
                        comp.push_back(pblocks::make_edge(g.vertex_at(a), g.vertex_at(b)));
                        if (a == u && b == v)
                            break;
                    }
                    std::sort(comp.begin(), comp.end());
                    out.push_back(std::move(comp));
                }
            } else if (v != parent && disc[v] < disc[u]) {
                estack.emplace_back(u, v);
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };
    for (std::size_t s = 0; s < n; ++s)
        if (disc[s] == -1)
            dfs(s, n);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<VertexId> articulation_points(const Graph &g)
{
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (!connected_without(g, {i}))
            out.push_back(g.vertex_at(i));
    return out;
}

// ------------------------------------------------------------ separations

// Every edge subset of g checked directly against the separation axioms;
// only for graphs with few edges.
inline std::vector<std::vector<Edge>> separations_by_subsets(const Graph &g, std::size_t boundary_size)
{
    const std::size_t m = g.edge_count();
    std::vector<std::vector<Edge>> out;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
        std::set<std::size_t> va;
        for (std::size_t e = 0; e < m; ++e)
            if (mask >> e & 1U) {
                va.insert(g.endpoints(e).first);
                va.insert(g.endpoints(e).second);
            }
        std::size_t boundary = 0;
        for (std::size_t v : va) {
            bool in = false, out_edge = false;
            for (std::size_t e : g.incident_of(v))
                ((mask >> e & 1U) ? in : out_edge) = true;
            if (in && out_edge)
                ++boundary;
        }
        const std::size_t count = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (boundary != boundary_size)
            continue;
        if (boundary_size == 2 && (count == 1 || count + 1 == m))
            continue;
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < m; ++e)
            if (mask >> e & 1U)
                edges.push_back(g.edge_at(e));
        out.push_back(std::move(edges));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------ automorphisms

// All adjacency-preserving vertex permutations by trying every permutation.
inline std::vector<std::vector<std::size_t>> automorphisms_by_permutations(const Graph &g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        adj[a][b] = adj[b][a] = true;
    }
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = a + 1; b < n && ok; ++b)
                if (adj[a][b] != adj[p[a]][p[b]])
                    ok = false;
        if (ok)
            out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// ------------------------------------------------------------ nested families

// Tree grown from a path by repeatedly splitting off new paths at random
// vertices. Vertex 0 is one end of the initial path.
inline Graph random_split_tree(std::mt19937_64 &rng, std::size_t n)
{
    std::vector<std::pair<VertexId, VertexId>> pairs;
    const std::size_t spine = std::max<std::size_t>(2, n / 3);
    for (VertexId v = 1; v < spine; ++v)
        pairs.emplace_back(v - 1, v);
    VertexId next = static_cast<VertexId>(spine);
    while (next < n) {
        const VertexId at = std::uniform_int_distribution<VertexId>(0, next - 1)(rng);
        const std::size_t len = std::min<std::size_t>(n - next, std::uniform_int_distribution<std::size_t>(1, 4)(rng));
        VertexId prev = at;
        for (std::size_t k = 0; k < len; ++k, ++next) {
            pairs.emplace_back(prev, next);
            prev = next;
        }
    }
    return from_pairs(pairs, n);
}

// Edges of the branch of tree t at x that contains the neighbour y
// (including the edge xy).
inline std::vector<Edge> tree_branch(const Graph &t, VertexId x, VertexId y)
{
    std::vector<Edge> out{pblocks::make_edge(x, y)};
    std::vector<std::pair<VertexId, VertexId>> stack{{y, x}};
    while (!stack.empty()) {
        auto [v, from] = stack.back();
        stack.pop_back();
        for (VertexId w : t.neighbors(v))
            if (w != from) {
                out.push_back(pblocks::make_edge(v, w));
                stack.emplace_back(w, v);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Classes of A ~ B iff A = B, or A < B* with nothing in the family strictly
// between, computed straight from the definition and closed transitively.
inline std::vector<std::vector<std::size_t>> tilde_classes(const std::vector<pblocks::Separation> &f)
{
    const std::size_t n = f.size();
    std::vector<std::size_t> star(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = f[i].complement();
        star[i] = static_cast<std::size_t>(std::find(f.begin(), f.end(), c) - f.begin());
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto &bs = f[star[b]];
            if (a == b || !f[a].proper_subset_of(bs))
                continue;
            bool between = false;
            for (std::size_t c = 0; c < n && !between; ++c)
                between = f[a].proper_subset_of(f[c]) && f[c].proper_subset_of(bs);
            if (!between)
                parent[root(a)] = root(b);
        }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i)
        groups[root(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto &[r, members] : groups)
        out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------- permutation groups

using Perm = std::vector<int>;

inline Perm perm_mul(const Perm &a, const Perm &b) // apply a, then b
{
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = b[static_cast<std::size_t>(a[i])];
    return r;
}

inline Perm perm_id(std::size_t n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Perm perm_pow(const Perm &a, int k)
{
    Perm r = perm_id(a.size());
    for (int i = 0; i < k; ++i)
        r = perm_mul(r, a);
    return r;
}

inline bool perm_even(const Perm &p)
{
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j])
                ++inversions;
    return inversions % 2 == 0;
}

inline std::size_t closure_size(const std::vector<Perm> &gens)
{
    std::set<Perm> seen{perm_id(gens.front().size())};
    std::vector<Perm> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
        Perm x = todo.back();
        todo.pop_back();
        for (const auto &g : gens) {
            Perm y = perm_mul(x, g);
            if (seen.insert(y).second)
                todo.push_back(y);
        }
    }
    return seen.size();
}

inline std::vector<Perm> all_perms(std::size_t n, bool even_only)
{
    std::vector<Perm> out;
    Perm p = perm_id(n);
    do
        if (!even_only || perm_even(p))
            out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Concrete permutations x, y in `pool` with x^a = y^b = (xy)^c = 1 that
// generate a group of order `order`, searched directly. Returns true when found.
inline bool triangle_group_realized(const std::vector<Perm> &pool, int a, int b, int c, std::size_t order)
{
    const Perm id = perm_id(pool.front().size());
    for (const auto &x : pool) {
        if (perm_pow(x, a) != id || x == id)
            continue;
        for (const auto &y : pool) {
            if (perm_pow(y, b) != id || y == id)
                continue;
            if (perm_pow(perm_mul(x, y), c) != id)
                continue;
            if (closure_size({x, y}) == order)
                return true;
        }
    }
    return false;
}

} // namespace oracle
