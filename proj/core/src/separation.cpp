#include "pblocks/separation.hpp"

#include <algorithm>

#include "pblocks/error.hpp"

namespace pblocks {

namespace {

std::vector<VertexId> derive_boundary(const Graph &host, const Bits &va, const Bits &ea)
{
    std::vector<VertexId> boundary;
    for (auto i = va.find_first(); i != Bits::npos; i = va.find_next(i)) {
        for (std::size_t e : host.incident_of(i)) {
            if (!ea.test(e)) {
                boundary.push_back(host.vertex_at(i));
                break;
            }
        }
    }
    return boundary;
}

Bits endpoints_of(const Graph &host, const Bits &ea)
{
    Bits va(host.vertex_count());
    for (auto e = ea.find_first(); e != Bits::npos; e = ea.find_next(e)) {
        auto [a, b] = host.endpoints(e);
        va.set(a);
        va.set(b);
    }
    return va;
}

} // namespace

Separation::Separation(std::shared_ptr<const Graph> host, Bits va, Bits ea, std::vector<VertexId> boundary)
    : host_(std::move(host)), va_(std::move(va)), ea_(std::move(ea)), boundary_(std::move(boundary))
{
    std::sort(boundary_.begin(), boundary_.end());
}

std::optional<Separation> Separation::from_edge_mask(std::shared_ptr<const Graph> host, Bits ea)
{
    if (ea.size() != host->edge_count() || ea.none())
        return std::nullopt;
    Bits va = endpoints_of(*host, ea);
    auto boundary = derive_boundary(*host, va, ea);
    if (boundary.empty() || boundary.size() > 2)
        return std::nullopt;
    const std::size_t m = ea.count();
    if (boundary.size() == 2 && (m == 1 || m + 1 == host->edge_count()))
        return std::nullopt;
    return Separation(std::move(host), std::move(va), std::move(ea), std::move(boundary));
}

Separation Separation::from_edges(std::shared_ptr<const Graph> host, std::span<const Edge> edges)
{
    Bits ea(host->edge_count());
    for (const Edge &e : edges) {
        auto idx = host->find_edge(e.u, e.v);
        if (!idx)
            throw Error(ErrorKind::MalformedInput, "edge not in host", to_string(e));
        ea.set(*idx);
    }
    auto s = from_edge_mask(std::move(host), std::move(ea));
    if (!s)
        throw Error(ErrorKind::MalformedInput, "edge set is not a valid separation");
    return *s;
}

std::vector<VertexId> Separation::vertices() const
{
    std::vector<VertexId> out;
    for (auto i = va_.find_first(); i != Bits::npos; i = va_.find_next(i))
        out.push_back(host_->vertex_at(i));
    return out;
}

std::vector<Edge> Separation::edges() const
{
    std::vector<Edge> out;
    for (auto e = ea_.find_first(); e != Bits::npos; e = ea_.find_next(e))
        out.push_back(host_->edge_at(e));
    return out;
}

std::vector<std::size_t> Separation::edge_indices() const
{
    std::vector<std::size_t> out;
    for (auto e = ea_.find_first(); e != Bits::npos; e = ea_.find_next(e))
        out.push_back(e);
    return out;
}

bool Separation::contains_vertex(VertexId v) const
{
    auto idx = host_->find_vertex(v);
    return idx && va_.test(*idx);
}

bool Separation::contains_edge(const Edge &e) const
{
    auto idx = host_->find_edge(e.u, e.v);
    return idx && ea_.test(*idx);
}

bool Separation::is_boundary(VertexId v) const
{
    return std::binary_search(boundary_.begin(), boundary_.end(), v);
}

Separation Separation::complement() const
{
    Bits ea = ~ea_;
    Bits va = ~va_;
    for (VertexId b : boundary_)
        va.set(host_->index_of(b));
    return Separation(host_, std::move(va), std::move(ea), boundary_);
}

bool Separation::subset_of(const Separation &other) const
{
    return va_.is_subset_of(other.va_) && ea_.is_subset_of(other.ea_);
}

bool Separation::operator==(const Separation &other) const
{
    if (host_ != other.host_ && !(host_ && other.host_ && *host_ == *other.host_))
        return false;
    return ea_ == other.ea_ && va_ == other.va_ && boundary_ == other.boundary_;
}

std::string Separation::describe() const
{
    std::string out = "{boundary:[";
    for (std::size_t i = 0; i < boundary_.size(); ++i)
        out += (i ? "," : "") + std::to_string(boundary_[i]);
    out += "] edges:[";
    bool first = true;
    for (const Edge &e : edges()) {
        out += (first ? "" : ",") + to_string(e);
        first = false;
    }
    return out + "]}";
}

bool canonical_less(const Separation &a, const Separation &b)
{
    if (a.boundary().size() != b.boundary().size())
        return a.boundary().size() < b.boundary().size();
    if (a.edge_count() != b.edge_count())
        return a.edge_count() < b.edge_count();
    // Lexicographic comparison of the sorted edge lists; host edges are sorted
    // so index order is edge order.
    const Bits &x = a.edge_mask();
    const Bits &y = b.edge_mask();
    auto i = x.find_first();
    auto j = y.find_first();
    while (i != Bits::npos && j != Bits::npos) {
        if (i != j)
            return i < j;
        i = x.find_next(i);
        j = y.find_next(j);
    }
    if (a.boundary() != b.boundary())
        return a.boundary() < b.boundary();
    return false;
}

std::optional<std::string> validate(const Separation &s)
{
    if (!s.host_ptr())
        return "separation has no host";
    const Graph &host = s.host();
    const Bits &va = s.vertex_mask();
    const Bits &ea = s.edge_mask();
    if (va.size() != host.vertex_count() || ea.size() != host.edge_count())
        return "masks do not match host size";
    const auto &boundary = s.boundary();
    if (boundary.empty() || boundary.size() > 2)
        return "boundary must have one or two vertices";

    for (auto e = ea.find_first(); e != Bits::npos; e = ea.find_next(e)) {
        auto [a, b] = host.endpoints(e);
        if (!va.test(a) || !va.test(b))
            return "edge " + to_string(host.edge_at(e)) + " has an endpoint outside A";
    }
    for (VertexId b : boundary) {
        auto idx = host.find_vertex(b);
        if (!idx || !va.test(*idx))
            return "boundary vertex " + std::to_string(b) + " not in A";
        std::size_t inside = 0;
        for (std::size_t e : host.incident_of(*idx))
            inside += ea.test(e) ? 1 : 0;
        if (inside == 0 || inside == host.degree_of(*idx))
            return "boundary vertex " + std::to_string(b) + " must have some but not all edges in A";
    }
    for (auto i = va.find_first(); i != Bits::npos; i = va.find_next(i)) {
        if (std::binary_search(boundary.begin(), boundary.end(), host.vertex_at(i)))
            continue;
        for (std::size_t e : host.incident_of(i))
            if (!ea.test(e))
                return "interior vertex " + std::to_string(host.vertex_at(i)) + " is not full";
    }
    if (boundary.size() == 2) {
        const std::size_t m = ea.count();
        if (m == 1)
            return "A is a single edge";
        if (m + 1 == host.edge_count())
            return "A is the host minus one edge";
    }
    return std::nullopt;
}

std::string Nesting::describe() const
{
    std::string out;
    auto add = [&](bool flag, const char *name) {
        if (flag)
            out += (out.empty() ? "" : ",") + std::string(name);
    };
    add(a_in_b, "A<=B");
    add(a_in_b_star, "A<=B*");
    add(a_star_in_b, "A*<=B");
    add(a_star_in_b_star, "A*<=B*");
    return out.empty() ? "none" : out;
}

Nesting nested(const Separation &a, const Separation &b)
{
    const Separation as = a.complement();
    const Separation bs = b.complement();
    Nesting n;
    n.a_in_b = a.subset_of(b);
    n.a_in_b_star = a.subset_of(bs);
    n.a_star_in_b = as.subset_of(b);
    n.a_star_in_b_star = as.subset_of(bs);
    return n;
}

} // namespace pblocks
