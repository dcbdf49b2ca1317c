#include "pblocks/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "pblocks/error.hpp"

namespace pblocks {

Permutation identity_permutation(std::size_t n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation &a, const Permutation &b)
{
    Permutation r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = a[b[i]];
    return r;
}

Permutation inverse(const Permutation &p)
{
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[p[i]] = i;
    return r;
}

bool is_identity(const Permutation &p)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i)
            return false;
    return true;
}

bool is_automorphism(const Graph &g, const Permutation &p)
{
    const std::size_t n = g.vertex_count();
    if (p.size() != n)
        return false;
    std::vector<bool> hit(n, false);
    for (std::size_t x : p) {
        if (x >= n || hit[x])
            return false;
        hit[x] = true;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        if (!g.adjacent(g.vertex_at(p[a]), g.vertex_at(p[b])))
            return false;
    }
    return true;
}

std::vector<std::size_t> edge_permutation(const Graph &g, const Permutation &p)
{
    std::vector<std::size_t> out(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        auto img = g.find_edge(g.vertex_at(p[a]), g.vertex_at(p[b]));
        if (!img)
            throw Error(ErrorKind::NotAnAutomorphism, "permutation does not preserve adjacency", to_string(g.edge_at(e)));
        out[e] = *img;
    }
    return out;
}

Separation permute(const Permutation &p, const Separation &s)
{
    const Graph &g = s.host();
    const auto ep = edge_permutation(g, p);
    Bits va(g.vertex_count());
    Bits ea(g.edge_count());
    for (auto i = s.vertex_mask().find_first(); i != Bits::npos; i = s.vertex_mask().find_next(i))
        va.set(p[i]);
    for (auto e = s.edge_mask().find_first(); e != Bits::npos; e = s.edge_mask().find_next(e))
        ea.set(ep[e]);
    std::vector<VertexId> boundary;
    for (VertexId v : s.boundary())
        boundary.push_back(g.vertex_at(p[g.index_of(v)]));
    return Separation(s.host_ptr(), std::move(va), std::move(ea), std::move(boundary));
}

namespace {

// Equitable colouring by 1-dimensional Weisfeiler-Leman refinement. Colours
// are renumbered by sorted signature, so two isomorphic coloured graphs get
// matching colour names.
std::vector<std::size_t> refine(const Graph &g, std::vector<std::size_t> colour)
{
    const std::size_t n = g.vertex_count();
    std::size_t classes = std::set<std::size_t>(colour.begin(), colour.end()).size();
    for (;;) {
        std::vector<std::pair<std::vector<std::size_t>, std::size_t>> sig(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto &s = sig[i].first;
            s.push_back(colour[i]);
            std::vector<std::size_t> nb;
            for (std::size_t j : g.neighbors_of(i))
                nb.push_back(colour[j]);
            std::sort(nb.begin(), nb.end());
            s.insert(s.end(), nb.begin(), nb.end());
            sig[i].second = i;
        }
        std::vector<std::vector<std::size_t>> distinct;
        distinct.reserve(n);
        for (auto &s : sig)
            distinct.push_back(s.first);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i)
            next[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[i].first) -
                                               distinct.begin());
        colour = std::move(next);
        if (distinct.size() == classes)
            return colour;
        classes = distinct.size();
    }
}

// Colouring after individualizing `fixed` (in order) and refining.
std::vector<std::size_t> individualized(const Graph &g, const std::vector<std::size_t> &fixed)
{
    std::vector<std::size_t> colour(g.vertex_count(), 0);
    for (std::size_t k = 0; k < fixed.size(); ++k)
        colour[fixed[k]] = k + 1;
    return refine(g, colour);
}

class Searcher {
public:
    explicit Searcher(const Graph &g) : g_(g), n_(g.vertex_count()), adj_(n_, Bits(n_))
    {
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [a, b] = g.endpoints(e);
            adj_[a].set(b);
            adj_[b].set(a);
        }
    }

    // An automorphism fixing base[0..k) pointwise and sending base[k] to c.
    std::optional<Permutation> find(const std::vector<std::size_t> &base, std::size_t k, std::size_t c)
    {
        std::vector<std::size_t> src(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k + 1));
        std::vector<std::size_t> dst(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
        dst.push_back(c);
        src_colour_ = individualized(g_, src);
        dst_colour_ = individualized(g_, dst);
        {
            auto a = src_colour_;
            auto b = dst_colour_;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b)
                return std::nullopt;
        }
        order_ = search_order(src);
        map_.assign(n_, npos);
        used_.assign(n_, false);
        if (!extend(0))
            return std::nullopt;
        return map_;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<std::size_t> search_order(const std::vector<std::size_t> &seed) const
    {
        std::vector<std::size_t> order;
        std::vector<bool> seen(n_, false);
        std::deque<std::size_t> q;
        for (std::size_t s : seed) {
            seen[s] = true;
            order.push_back(s);
            q.push_back(s);
        }
        for (std::size_t start = 0;; ++start) {
            while (!q.empty()) {
                const std::size_t x = q.front();
                q.pop_front();
                for (std::size_t y : g_.neighbors_of(x))
                    if (!seen[y]) {
                        seen[y] = true;
                        order.push_back(y);
                        q.push_back(y);
                    }
            }
            while (start < n_ && seen[start])
                ++start;
            if (start >= n_)
                break;
            seen[start] = true;
            order.push_back(start);
            q.push_back(start);
        }
        return order;
    }

    bool consistent(std::size_t v, std::size_t w) const
    {
        if (used_[w] || src_colour_[v] != dst_colour_[w] || g_.degree_of(v) != g_.degree_of(w))
            return false;
        std::size_t mapped_v = 0;
        for (std::size_t u : g_.neighbors_of(v))
            if (map_[u] != npos) {
                if (!adj_[w].test(map_[u]))
                    return false;
                ++mapped_v;
            }
        std::size_t mapped_w = 0;
        for (std::size_t x : g_.neighbors_of(w))
            if (used_[x])
                ++mapped_w;
        return mapped_v == mapped_w;
    }

    bool extend(std::size_t pos)
    {
        if (pos == n_)
            return true;
        const std::size_t v = order_[pos];
        // Seed vertices are pinned by their unique individualized colours.
        std::size_t anchor = npos;
        for (std::size_t u : g_.neighbors_of(v))
            if (map_[u] != npos) {
                anchor = map_[u];
                break;
            }
        auto try_candidate = [&](std::size_t w) {
            if (!consistent(v, w))
                return false;
            map_[v] = w;
            used_[w] = true;
            if (extend(pos + 1))
                return true;
            map_[v] = npos;
            used_[w] = false;
            return false;
        };
        if (anchor != npos) {
            for (std::size_t w : g_.neighbors_of(anchor))
                if (try_candidate(w))
                    return true;
        } else {
            for (std::size_t w = 0; w < n_; ++w)
                if (try_candidate(w))
                    return true;
        }
        return false;
    }

    const Graph &g_;
    std::size_t n_;
    std::vector<Bits> adj_;
    std::vector<std::size_t> src_colour_, dst_colour_, order_, map_;
    std::vector<bool> used_;
};

// Orbit of `point` under the group generated by `gens`.
std::vector<std::size_t> orbit_of(std::size_t point, const std::vector<Permutation> &gens, std::size_t n)
{
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> orbit{point};
    seen[point] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto &p : gens)
            if (!seen[p[orbit[i]]]) {
                seen[p[orbit[i]]] = true;
                orbit.push_back(p[orbit[i]]);
            }
    return orbit;
}

} // namespace

std::vector<Permutation> automorphism_generators(const Graph &g, std::uint64_t *order)
{
    const std::size_t n = g.vertex_count();
    std::vector<Permutation> gens;
    std::uint64_t total = 1;
    if (n == 0) {
        if (order)
            *order = 1;
        return gens;
    }

    // Base: each next point is the smallest vertex not yet fixed by the
    // refined colouring of the points chosen so far.
    std::vector<std::size_t> base;
    for (;;) {
        const auto colour = individualized(g, base);
        std::vector<std::size_t> count(n + 1, 0);
        for (std::size_t c : colour)
            ++count[c];
        std::size_t next = n;
        for (std::size_t i = 0; i < n; ++i)
            if (count[colour[i]] > 1) {
                next = i;
                break;
            }
        if (next == n)
            break;
        base.push_back(next);
    }

    Searcher search(g);
    // Level k holds generators fixing base[0..k). Deepest level first, so
    // the generators found so far generate the stabilizer of base[0..k+1).
    for (std::size_t k = base.size(); k-- > 0;) {
        const std::size_t b = base[k];
        const auto colour = individualized(g, std::vector<std::size_t>(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k)));
        std::vector<std::size_t> orbit = orbit_of(b, gens, n);
        std::vector<bool> in_orbit(n, false);
        for (std::size_t x : orbit)
            in_orbit[x] = true;
        for (std::size_t c = 0; c < n; ++c) {
            if (in_orbit[c] || colour[c] != colour[b])
                continue;
            auto p = search.find(base, k, c);
            if (!p)
                continue;
            gens.push_back(*p);
            orbit = orbit_of(b, gens, n);
            std::fill(in_orbit.begin(), in_orbit.end(), false);
            for (std::size_t x : orbit)
                in_orbit[x] = true;
        }
        total *= orbit.size();
    }
    if (order)
        *order = total;
    return gens;
}

std::vector<Permutation> materialize(std::size_t n, const std::vector<Permutation> &generators, std::size_t limit)
{
    std::vector<Permutation> elements{identity_permutation(n)};
    std::set<Permutation> seen(elements.begin(), elements.end());
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (const auto &g : generators) {
            Permutation p = compose(g, elements[i]);
            if (seen.insert(p).second) {
                if (elements.size() >= limit)
                    throw Error(ErrorKind::TooLarge, "group has more than " + std::to_string(limit) + " elements");
                elements.push_back(std::move(p));
            }
        }
    return elements;
}

AutGroup automorphism_generators_only(const Graph &g)
{
    AutGroup h;
    h.host = g;
    h.generators = automorphism_generators(g, &h.order);
    return h;
}

AutGroup automorphism_group(const Graph &g, const AutOptions &options)
{
    if (g.vertex_count() > options.vertex_limit)
        throw Error(ErrorKind::TooLarge,
                    "graph has " + std::to_string(g.vertex_count()) + " vertices, materialization bound is " +
                        std::to_string(options.vertex_limit));
    AutGroup h = automorphism_generators_only(g);
    if (h.order > options.element_limit)
        throw Error(ErrorKind::TooLarge, "automorphism group has order " + std::to_string(h.order));
    h.elements = materialize(g.vertex_count(), h.generators, options.element_limit);
    if (h.elements.size() != h.order)
        throw Error(ErrorKind::InternalInvariant, "materialized group size disagrees with orbit product");
    return h;
}

std::vector<std::vector<VertexId>> vertex_orbits(const Graph &g, const std::vector<Permutation> &generators)
{
    const std::size_t n = g.vertex_count();
    std::vector<bool> done(n, false);
    std::vector<std::vector<VertexId>> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i])
            continue;
        auto orbit = orbit_of(i, generators, n);
        std::vector<VertexId> ids;
        for (std::size_t x : orbit) {
            done[x] = true;
            ids.push_back(g.vertex_at(x));
        }
        std::sort(ids.begin(), ids.end());
        out.push_back(std::move(ids));
    }
    return out;
}

std::size_t stabilizer_order(const AutGroup &h, VertexId v)
{
    const std::size_t i = h.host.index_of(v);
    if (h.materialized())
        return static_cast<std::size_t>(
            std::count_if(h.elements.begin(), h.elements.end(), [i](const Permutation &p) { return p[i] == i; }));
    const std::size_t orbit = orbit_of(i, h.generators, h.host.vertex_count()).size();
    return static_cast<std::size_t>(h.order / orbit);
}

bool acts_freely(const AutGroup &h)
{
    if (!h.materialized())
        throw Error(ErrorKind::PreconditionViolated, "free-action check needs a materialized group");
    for (std::size_t k = 1; k < h.elements.size(); ++k) {
        const auto &p = h.elements[k];
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] == i)
                return false;
    }
    return true;
}

QuotientGraph quotient_graph(const Graph &g, const AutGroup &h)
{
    QuotientGraph q;
    q.vertex_orbits = vertex_orbits(g, h.generators);
    std::vector<std::size_t> orbit_id(g.vertex_count());
    for (std::size_t o = 0; o < q.vertex_orbits.size(); ++o)
        for (VertexId v : q.vertex_orbits[o])
            orbit_id[g.index_of(v)] = o;

    std::vector<std::vector<std::size_t>> eperm;
    for (const auto &p : h.generators)
        eperm.push_back(edge_permutation(g, p));
    std::vector<bool> done(g.edge_count(), false);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (done[e])
            continue;
        QuotientGraph::EdgeOrbit orbit;
        std::vector<std::size_t> members{e};
        done[e] = true;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (const auto &ep : eperm)
                if (!done[ep[members[i]]]) {
                    done[ep[members[i]]] = true;
                    members.push_back(ep[members[i]]);
                }
        std::sort(members.begin(), members.end());
        for (std::size_t m : members)
            orbit.edges.push_back(g.edge_at(m));
        auto [a, b] = g.endpoints(e);
        orbit.from = std::min(orbit_id[a], orbit_id[b]);
        orbit.to = std::max(orbit_id[a], orbit_id[b]);
        orbit.loop = orbit.from == orbit.to;
        ++q.multiplicity[{orbit.from, orbit.to}];
        q.edge_orbits.push_back(std::move(orbit));
    }
    return q;
}

std::vector<std::string> tree_action_check(const StructureTree &t, const NestedFamily &f, const AutGroup &h)
{
    std::vector<std::string> report;
    const auto &elements = h.materialized() ? h.elements : h.generators;
    if (f.empty())
        return report;
    const Graph &host = f[0].host();
    if (!(host == h.host)) {
        report.push_back("group acts on a different host than the family");
        return report;
    }
    std::vector<std::size_t> vertex_of(f.size());
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        for (std::size_t m : t.members[v])
            vertex_of[m] = v;

    for (std::size_t k = 0; k < elements.size(); ++k) {
        const Permutation &p = elements[k];
        const std::string name = (h.materialized() ? "element " : "generator ") + std::to_string(k);
        if (!is_automorphism(host, p)) {
            report.push_back(name + " is not an automorphism");
            continue;
        }
        std::vector<std::size_t> image(f.size());
        bool complete = true;
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto j = f.find(permute(p, f[i]));
            if (!j) {
                report.push_back(name + " maps " + f[i].describe() + " outside the family to " +
                                 permute(p, f[i]).describe());
                complete = false;
                continue;
            }
            image[i] = *j;
        }
        if (!complete)
            continue;

        // Induced tree map: must be well defined on vertices and reverse-compatible.
        std::vector<std::size_t> tree_map(t.vertex_count(), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::size_t from = vertex_of[i];
            const std::size_t to = vertex_of[image[i]];
            if (tree_map[from] == static_cast<std::size_t>(-1))
                tree_map[from] = to;
            else if (tree_map[from] != to)
                report.push_back(name + " splits tree vertex " + std::to_string(from));
            if (image[f.complement_of(i)] != f.complement_of(image[i]))
                report.push_back(name + " does not commute with complement at element " + std::to_string(i));
        }
        std::vector<bool> hit(t.vertex_count(), false);
        for (std::size_t v = 0; v < t.vertex_count(); ++v) {
            const std::size_t w = tree_map[v];
            if (w == static_cast<std::size_t>(-1))
                continue;
            if (hit[w])
                report.push_back(name + " is not injective on tree vertices");
            hit[w] = true;
        }

        // Stabilizer of a tree vertex maps the vertex's part of the host to itself.
        for (std::size_t v = 0; v < t.vertex_count(); ++v) {
            if (tree_map[v] != v)
                continue;
            const auto core = vertex_core(host, f, t.members[v]);
            for (auto x = core.vertices.find_first(); x != Bits::npos; x = core.vertices.find_next(x))
                if (!core.vertices.test(p[x])) {
                    report.push_back(name + " fixes tree vertex " + std::to_string(v) + " but moves " +
                                     std::to_string(host.vertex_at(x)) + " out of its core");
                    break;
                }
        }
    }
    return report;
}

} // namespace pblocks
