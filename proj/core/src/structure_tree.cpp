#include "pblocks/structure_tree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "pblocks/error.hpp"

namespace pblocks {

NestedFamily NestedFamily::from(std::vector<Separation> elements)
{
    NestedFamily f;
    const std::size_t n = elements.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (elements[i].host_ptr() != elements[0].host_ptr() && !(elements[i].host() == elements[0].host()))
            throw Error(ErrorKind::PreconditionViolated, "family elements live on different hosts");
        elements.push_back(elements[i].complement());
    }
    std::sort(elements.begin(), elements.end(), canonical_less);
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    f.elements_ = std::move(elements);
    f.complement_.resize(f.elements_.size());
    for (std::size_t i = 0; i < f.elements_.size(); ++i) {
        auto c = f.find(f.elements_[i].complement());
        if (!c)
            throw Error(ErrorKind::InternalInvariant, "complement missing from family");
        f.complement_[i] = *c;
    }
    return f;
}

std::optional<std::size_t> NestedFamily::find(const Separation &s) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), s, canonical_less);
    if (it == elements_.end() || !(*it == s))
        return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<Bits> NestedFamily::subset_matrix() const
{
    const std::size_t n = elements_.size();
    std::vector<Bits> m(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (elements_[i].subset_of(elements_[j]))
                m[i].set(j);
    return m;
}

std::optional<std::pair<std::size_t, std::size_t>> find_crossing_pair(const NestedFamily &f)
{
    const auto sub = f.subset_matrix();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t ic = f.complement_of(i);
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const std::size_t jc = f.complement_of(j);
            if (!(sub[i].test(j) || sub[i].test(jc) || sub[ic].test(j) || sub[ic].test(jc)))
                return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

void check_nested(const NestedFamily &f)
{
    if (auto p = find_crossing_pair(f)) {
        throw Error(ErrorKind::NotNested, "family is not nested",
                    std::to_string(p->first) + " " + f[p->first].describe() + " x " + std::to_string(p->second) +
                        " " + f[p->second].describe());
    }
}

std::vector<std::vector<std::size_t>> StructureTree::out_edges() const
{
    std::vector<std::vector<std::size_t>> out(members.size());
    for (std::size_t e = 0; e < tail.size(); ++e)
        out[tail[e]].push_back(e);
    return out;
}

StructureTree build_structure_tree(const NestedFamily &f)
{
    StructureTree t;
    const std::size_t n = f.size();
    if (n == 0) {
        t.members.push_back({});
        return t;
    }
    check_nested(f);

    const auto sub = f.subset_matrix();
    // strict[i] : elements strictly above i; below[d] : elements strictly below d.
    std::vector<Bits> strict(n, Bits(n));
    std::vector<Bits> below(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
        for (auto j = sub[i].find_first(); j != Bits::npos; j = sub[i].find_next(j))
            if (j != i) {
                strict[i].set(j);
                below[j].set(i);
            }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (auto d = strict[i].find_first(); d != Bits::npos; d = strict[i].find_next(d)) {
            // d = B*; minimal over i when nothing strictly between.
            if ((strict[i] & below[d]).any())
                continue;
            const std::size_t j = f.complement_of(d);
            const std::size_t a = find(i);
            const std::size_t b = find(j);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    }

    // Roots are the smallest member of each class, so ordering classes by
    // root gives deterministic vertex ids.
    std::vector<std::size_t> vertex_of_root(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (vertex_of_root[r] == n) {
            vertex_of_root[r] = t.members.size();
            t.members.emplace_back();
        }
        t.members[vertex_of_root[r]].push_back(i);
    }
    t.tail.resize(n);
    t.head.resize(n);
    t.reversal.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.tail[i] = vertex_of_root[find(i)];
        t.head[i] = vertex_of_root[find(f.complement_of(i))];
        t.reversal[i] = f.complement_of(i);
    }
    return t;
}

VertexCore vertex_core(const Graph &host, const NestedFamily &f, const std::vector<std::size_t> &members)
{
    VertexCore core{Bits(host.vertex_count()), Bits(host.edge_count())};
    core.vertices.set();
    core.edges.set();
    for (std::size_t m : members) {
        const Separation &star = f[f.complement_of(m)];
        core.vertices &= star.vertex_mask();
        core.edges &= star.edge_mask();
    }
    return core;
}

std::vector<std::string> verify_tree_correspondence(const StructureTree &t, const NestedFamily &f)
{
    std::vector<std::string> report;
    const std::size_t n = f.size();
    if (t.tail.size() != n || t.head.size() != n || t.reversal.size() != n) {
        report.push_back("directed edge count " + std::to_string(t.tail.size()) + " != family size " +
                         std::to_string(n));
        return report;
    }
    const std::size_t nv = t.vertex_count();
    if (nv == 0) {
        report.push_back("tree has no vertices");
        return report;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (t.tail[i] >= nv || t.head[i] >= nv) {
            report.push_back("edge " + std::to_string(i) + " has an endpoint outside the tree");
            return report;
        }
    }

    std::vector<std::size_t> seen(n, 0);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t e : t.members[v]) {
            if (e >= n) {
                report.push_back("vertex " + std::to_string(v) + " lists unknown element " + std::to_string(e));
                continue;
            }
            ++seen[e];
            if (t.tail[e] != v)
                report.push_back("element " + std::to_string(e) + " listed at vertex " + std::to_string(v) +
                                 " but leaves vertex " + std::to_string(t.tail[e]));
        }
    for (std::size_t e = 0; e < n; ++e)
        if (seen[e] != 1)
            report.push_back("element " + std::to_string(e) + " appears at " + std::to_string(seen[e]) +
                             " tree vertices");

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = t.reversal[i];
        if (r >= n) {
            report.push_back("edge " + std::to_string(i) + " has no reversal");
            continue;
        }
        if (r != f.complement_of(i))
            report.push_back("reversal of " + std::to_string(i) + " is " + std::to_string(r) +
                             " but its complement is " + std::to_string(f.complement_of(i)));
        if (t.reversal[r] != i)
            report.push_back("reversal is not an involution at pair (" + std::to_string(i) + "," +
                             std::to_string(r) + ")");
        if (t.tail[r] != t.head[i] || t.head[r] != t.tail[i])
            report.push_back("edges " + std::to_string(i) + " and " + std::to_string(r) +
                             " are not reverses of each other");
    }
    if (!report.empty())
        return report;

    // Tree shape: |V| = |E|/2 + 1 and connected.
    if (nv != n / 2 + 1)
        report.push_back("vertex count " + std::to_string(nv) + " != undirected edge count + 1 (" +
                         std::to_string(n / 2 + 1) + ")");
    const auto out = t.out_edges();
    constexpr std::size_t unreached = static_cast<std::size_t>(-1);
    auto bfs = [&](std::size_t src) {
        std::vector<std::size_t> dist(nv, unreached);
        std::deque<std::size_t> q{src};
        dist[src] = 0;
        while (!q.empty()) {
            const std::size_t x = q.front();
            q.pop_front();
            for (std::size_t e : out[x])
                if (dist[t.head[e]] == unreached) {
                    dist[t.head[e]] = dist[x] + 1;
                    q.push_back(t.head[e]);
                }
        }
        return dist;
    };
    std::vector<std::vector<std::size_t>> dist(nv);
    for (std::size_t v = 0; v < nv; ++v)
        dist[v] = bfs(v);
    if (std::count(dist[0].begin(), dist[0].end(), unreached) > 0)
        report.push_back("tree is not connected");
    if (!report.empty())
        return report;

    // Coherence: A_i < A_j iff edge i lies beyond edge j, oriented away from it.
    const auto sub = f.subset_matrix();
    for (std::size_t j = 0; j < n; ++j) {
        const auto &dt = dist[t.tail[j]];
        const auto &dh = dist[t.head[j]];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || i == t.reversal[j])
                continue;
            const bool beyond = dt[t.tail[i]] == dh[t.tail[i]] + 1 && dh[t.head[i]] == dh[t.tail[i]] + 1;
            const bool below = sub[i].test(j);
            if (beyond != below)
                report.push_back("order mismatch: element " + std::to_string(i) + (below ? " <= " : " !<= ") +
                                 std::to_string(j) + " but tree says " + (beyond ? "beyond" : "not beyond"));
        }
    }
    return report;
}

} // namespace pblocks
