#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pblocks/separation.hpp"

namespace pblocks {

// A finite set of separations of one host, closed under complement, kept in
// canonical order (see canonical_less). Construction does not check nesting;
// call check_nested() or build_structure_tree() for that.
class NestedFamily {
public:
    NestedFamily() = default;

    // Adds complements, removes duplicates and sorts.
    static NestedFamily from(std::vector<Separation> elements);

    const std::vector<Separation> &elements() const { return elements_; }
    const Separation &operator[](std::size_t i) const { return elements_[i]; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    std::size_t complement_of(std::size_t i) const { return complement_[i]; }
    std::optional<std::size_t> find(const Separation &s) const;
    bool contains(const Separation &s) const { return find(s).has_value(); }

    // subset[i] has bit j set iff element i <= element j.
    std::vector<Bits> subset_matrix() const;

private:
    std::vector<Separation> elements_;
    std::vector<std::size_t> complement_;
};

// First pair (i, j) violating the four-inclusion condition, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_crossing_pair(const NestedFamily &f);
// Throws NotNested with the witness pair when the family is not nested.
void check_nested(const NestedFamily &f);

// Tree whose directed edges are the family elements. Tree vertices are the
// classes of the relation
//     A ~ B  iff  A < B* and no C in the family has A < C < B*
// (plus A ~ A). A tree vertex is the set of directed edges leaving it, so the
// edge of A runs from class(A) to class(A*), and A < B exactly when the edge
// of A lies beyond the edge of B on a coherently directed path starting with B.
struct StructureTree {
    std::vector<std::vector<std::size_t>> members; // tree vertex -> element ids
    std::vector<std::size_t> tail;                 // element -> tree vertex it leaves
    std::vector<std::size_t> head;                 // element -> tree vertex it enters
    std::vector<std::size_t> reversal;             // element -> reverse directed edge

    std::size_t vertex_count() const { return members.size(); }
    std::size_t edge_count() const { return tail.size(); }
    // Undirected adjacency, one entry per directed edge leaving the vertex.
    std::vector<std::vector<std::size_t>> out_edges() const;
};

StructureTree build_structure_tree(const NestedFamily &f);

// The part of the host that belongs to a tree vertex: the intersection of the
// complements of its members (the whole host when there are none).
struct VertexCore {
    Bits vertices;
    Bits edges;
};
VertexCore vertex_core(const Graph &host, const NestedFamily &f, const std::vector<std::size_t> &members);

// Lists every violated correspondence invariant (bijection with the family,
// reversal = complement, tree shape, order coherence). Empty on success.
std::vector<std::string> verify_tree_correspondence(const StructureTree &t, const NestedFamily &f);

} // namespace pblocks
