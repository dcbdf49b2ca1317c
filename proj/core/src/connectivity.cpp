#include "pblocks/connectivity.hpp"

#include <deque>
#include <limits>
#include <vector>

#include "pblocks/error.hpp"

namespace pblocks {

namespace {

struct Arc {
    std::size_t to;
    int cap;
    std::size_t rev;
};

class SplitNetwork {
public:
    SplitNetwork(const Graph &g, std::size_t s, std::size_t t) : arcs_(2 * g.vertex_count())
    {
        constexpr int big = std::numeric_limits<int>::max() / 4;
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            add(in(v), out(v), (v == s || v == t) ? big : 1);
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [a, b] = g.endpoints(e);
            add(out(a), in(b), 1);
            add(out(b), in(a), 1);
        }
        source_ = out(s);
        sink_ = in(t);
    }

    std::size_t max_flow(std::size_t cap)
    {
        std::size_t flow = 0;
        while (flow < cap && augment())
            ++flow;
        return flow;
    }

private:
    static std::size_t in(std::size_t v) { return 2 * v; }
    static std::size_t out(std::size_t v) { return 2 * v + 1; }

    void add(std::size_t a, std::size_t b, int cap)
    {
        arcs_[a].push_back({b, cap, arcs_[b].size()});
        arcs_[b].push_back({a, 0, arcs_[a].size() - 1});
    }

    bool augment()
    {
        const std::size_t n = arcs_.size();
        std::vector<std::pair<std::size_t, std::size_t>> parent(n, {n, 0});
        std::deque<std::size_t> queue{source_};
        parent[source_] = {source_, 0};
        while (!queue.empty() && parent[sink_].first == n) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t k = 0; k < arcs_[x].size(); ++k) {
                const Arc &a = arcs_[x][k];
                if (a.cap > 0 && parent[a.to].first == n) {
                    parent[a.to] = {x, k};
                    queue.push_back(a.to);
                }
            }
        }
        if (parent[sink_].first == n)
            return false;
        for (std::size_t y = sink_; y != source_;) {
            auto [x, k] = parent[y];
            Arc &a = arcs_[x][k];
            a.cap -= 1;
            arcs_[y][a.rev].cap += 1;
            y = x;
        }
        return true;
    }

    std::vector<std::vector<Arc>> arcs_;
    std::size_t source_ = 0;
    std::size_t sink_ = 0;
};

} // namespace

std::size_t local_connectivity(const Graph &g, std::size_t s_index, std::size_t t_index, std::size_t cap)
{
    if (s_index == t_index)
        throw Error(ErrorKind::PreconditionViolated, "local connectivity needs distinct vertices");
    SplitNetwork net(g, s_index, t_index);
    return net.max_flow(cap);
}

bool is_k_connected(const Graph &g, int k)
{
    const std::size_t n = g.vertex_count();
    switch (k) {
    case 1:
        return n >= 1 && is_connected(g);
    case 2:
        if (n < 3)
            return false;
        break;
    case 3:
        if (n < 5)
            return false;
        break;
    default:
        throw Error(ErrorKind::PreconditionViolated, "k must be 1, 2 or 3", std::to_string(k));
    }
    if (!is_connected(g))
        return false;
    const auto need = static_cast<std::size_t>(k);
    for (std::size_t v = 0; v < n; ++v)
        if (g.degree_of(v) < need)
            return false;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            if (local_connectivity(g, s, t, need) < need)
                return false;
    return true;
}

std::optional<VertexId> find_cut_vertex(const Graph &g)
{
    std::vector<bool> removed(g.vertex_count(), false);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        removed[v] = true;
        int count = 0;
        component_labels(g, removed, &count);
        removed[v] = false;
        if (count > 1)
            return g.vertex_at(v);
    }
    return std::nullopt;
}

std::optional<std::pair<VertexId, VertexId>> find_separating_pair(const Graph &g)
{
    if (auto c = find_cut_vertex(g))
        return std::make_pair(*c, *c);
    std::vector<bool> removed(g.vertex_count(), false);
    for (std::size_t a = 0; a < g.vertex_count(); ++a) {
        removed[a] = true;
        for (std::size_t b = a + 1; b < g.vertex_count(); ++b) {
            removed[b] = true;
            int count = 0;
            component_labels(g, removed, &count);
            removed[b] = false;
            if (count > 1) {
                removed[a] = false;
                return std::make_pair(g.vertex_at(a), g.vertex_at(b));
            }
        }
        removed[a] = false;
    }
    return std::nullopt;
}

} // namespace pblocks
