#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pblocks/graph.hpp"
#include "pblocks/separation.hpp"
#include "pblocks/structure_tree.hpp"

namespace pblocks {

// Vertex permutation by host index: p[i] is the index of the image of vertex i.
using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t n);
// (a * b)(i) = a(b(i)): apply b first.
Permutation compose(const Permutation &a, const Permutation &b);
Permutation inverse(const Permutation &p);
bool is_identity(const Permutation &p);
bool is_automorphism(const Graph &g, const Permutation &p);
// Image of each edge index under p. p must be an automorphism.
std::vector<std::size_t> edge_permutation(const Graph &g, const Permutation &p);
Separation permute(const Permutation &p, const Separation &s);

struct AutOptions {
    std::size_t vertex_limit = 12;      // full materialization bound on |V|
    std::size_t element_limit = 100000; // bound on |Aut| when materializing
};

struct AutGroup {
    Graph host;
    std::vector<Permutation> generators; // strong generating set, identity never listed
    std::vector<Permutation> elements;   // elements[0] is the identity; empty if not materialized
    std::uint64_t order = 1;

    bool materialized() const { return !elements.empty(); }
};

// Strong generating set of Aut(g) found by a point-stabilizer search: for each
// base point (vertex index order, deepest level first) one automorphism per
// new orbit image, with candidates pruned by colour refinement and
// adjacency consistency. `order` receives the product of basic orbit sizes.
std::vector<Permutation> automorphism_generators(const Graph &g, std::uint64_t *order = nullptr);

// Aut(g) with every element listed. TooLarge when |V| or |Aut| exceed the bounds.
AutGroup automorphism_group(const Graph &g, const AutOptions &options = {});
// Generators and order only; no materialization bound on |V|.
AutGroup automorphism_generators_only(const Graph &g);

// Closure of the generators; TooLarge past `limit` elements.
std::vector<Permutation> materialize(std::size_t n, const std::vector<Permutation> &generators, std::size_t limit);

std::vector<std::vector<VertexId>> vertex_orbits(const Graph &g, const std::vector<Permutation> &generators);
std::size_t stabilizer_order(const AutGroup &h, VertexId v);
// No non-identity element fixes a vertex. Needs a materialized group.
bool acts_freely(const AutGroup &h);

struct QuotientGraph {
    std::vector<std::vector<VertexId>> vertex_orbits;
    struct EdgeOrbit {
        std::vector<Edge> edges;
        std::size_t from = 0; // vertex orbit ids, from <= to
        std::size_t to = 0;
        bool loop = false;
    };
    std::vector<EdgeOrbit> edge_orbits;
    // Number of edge orbits joining each pair of vertex orbits.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> multiplicity;
};

QuotientGraph quotient_graph(const Graph &g, const AutGroup &h);

// Checks that the group permutes the family, induces a tree automorphism on
// the structure tree, and that each tree-vertex stabilizer maps the vertex's
// core (intersection of complements, plus hinge pairs) to itself. Uses every
// group element when materialized, the generators otherwise.
std::vector<std::string> tree_action_check(const StructureTree &t, const NestedFamily &f, const AutGroup &h);

} // namespace pblocks
