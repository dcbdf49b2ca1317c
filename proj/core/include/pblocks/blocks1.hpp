#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "pblocks/graph.hpp"
#include "pblocks/structure_tree.hpp"

namespace pblocks {

enum class NodeKind {
    CutPoint,
    Block,          // 2-block of the block-cut tree
    Hinge,          // two-vertex class shared by several 2-separations
    Cycle,
    ThreeConnected, // includes the tiny torsos K2, K3 and K4
};

std::string_view to_string(NodeKind kind);

// A vertex of a decomposition tree. Nodes with a tree_vertex come from the
// structure tree; the others subdivide an edge {A, A*} whose boundary is a
// cut-point with exactly two sides.
struct DecompNode {
    NodeKind kind = NodeKind::Block;
    std::optional<std::size_t> tree_vertex;
    std::vector<VertexId> vertices; // part of the host owned by the node
    std::vector<Edge> edges;        // real host edges owned by the node
    std::vector<Edge> virtual_edges;
    bool tiny = false; // 3-connected only by the small-torso convention
};

// Undirected link between nodes; `element` is the family element leaving the
// `from` side (its complement leaves `to`).
struct DecompLink {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t element = 0;
};

struct BlockCutTree {
    std::shared_ptr<const Graph> host;
    NestedFamily family;
    StructureTree tree;
    std::vector<DecompNode> nodes; // CutPoint (J) and Block (K)
    std::vector<DecompLink> links;
};

// Vertices whose removal disconnects g. NotConnected for disconnected input.
std::vector<VertexId> cut_vertices(const Graph &g);

// For every cut-point x and every component C of X - x, the separation made
// of C and its edges to x, plus complements.
NestedFamily b1_family(std::shared_ptr<const Graph> g);

BlockCutTree block_cut_tree(std::shared_ptr<const Graph> g);

// Turns a structure tree into nodes and links. `kind[v]` classifies tree
// vertex v; links between two non-cut-point nodes whose separation has a
// single boundary vertex get a cut-point node in between.
void assemble_nodes(const Graph &host, const NestedFamily &f, const StructureTree &t,
                    const std::vector<NodeKind> &kind, std::vector<DecompNode> &nodes,
                    std::vector<DecompLink> &links);

} // namespace pblocks
