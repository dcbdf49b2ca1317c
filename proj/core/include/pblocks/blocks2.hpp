#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pblocks/blocks1.hpp"
#include "pblocks/reduce.hpp"
#include "pblocks/separation.hpp"
#include "pblocks/structure_tree.hpp"

namespace pblocks {

// Every separation of g with a two-vertex boundary, in canonical order.
// Found per vertex pair {u,w} as unions of the pieces of X - {u,w} (one per
// component, plus the edge uw), filtered by the separation invariants.
std::vector<Separation> enumerate_separations(std::shared_ptr<const Graph> g);

// Two-vertex-boundary separations with u in the boundary. g must be
// 2-connected, not a cycle and have at least 4 vertices
// (PreconditionViolated otherwise).
std::vector<Separation> enumerate_separations_at(std::shared_ptr<const Graph> g, VertexId u);

// The canonically smallest two-vertex-boundary separation containing x0;
// it is minimal under inclusion. NoSeparationExists when there is none.
Separation minimal_separation_containing(std::shared_ptr<const Graph> g, VertexId x0);

struct VirtualEdge {
    Edge edge;
    std::vector<std::size_t> members; // family elements across this hinge
    std::vector<VertexId> path;       // host path inside the first member, p ... q
};

// Graph attached to a tree vertex v: Z' is the intersection of the
// complements of the elements leaving v, Z adds one virtual edge per
// boundary pair that is not already an edge of Z', and the witness Z''
// replaces each virtual edge by a host path through the side it stands for.
struct Torso {
    std::size_t tree_vertex = 0;
    Graph z_prime;
    std::vector<VirtualEdge> virtual_edges;
    Graph z;
    Graph witness;
};

// True when v is a hinge class: its core is exactly the common boundary of
// at least two of its elements, and every two-vertex boundary there equals it.
bool is_hinge_class(const Graph &host, const NestedFamily &f, const StructureTree &t, std::size_t v);

// HingeVertex when v is a hinge class.
Torso torso(const Graph &host, const NestedFamily &f, const StructureTree &t, std::size_t v);

// Cycle, or 3-connected (no separating set of size <= 2; graphs on at most
// 4 vertices pass only when complete and are flagged tiny). nullopt otherwise.
std::optional<NodeKind> classify_graph(const Graph &z, bool *tiny = nullptr);

// Contracting each witness path of Z'' gives Z (identity on vertex ids).
bool witness_contracts_to_torso(const Torso &torso);

// Nested Aut-invariant family of two-vertex-boundary separations whose tree
// has only cycle, 3-connected and hinge vertices. g must be 2-connected,
// have at least 4 vertices, not be a cycle and have a separating pair.
NestedFamily build_nested_family(std::shared_ptr<const Graph> g);

struct TriblockOptions {
    bool reduce = false; // suppress degree-2 vertices first
};

struct TriBlockTree {
    std::shared_ptr<const Graph> host; // the decomposed graph (reduced when requested)
    std::optional<Reduction> reduction;
    NestedFamily family;
    StructureTree tree;
    std::vector<DecompNode> nodes;
    std::vector<DecompLink> links;
    std::vector<std::optional<Torso>> torsos; // parallel to nodes
    std::size_t rounds = 0;                   // successful enlargements
    std::vector<std::string> log;
};

TriBlockTree triblock_tree(const Graph &g, const TriblockOptions &options = {});

} // namespace pblocks
