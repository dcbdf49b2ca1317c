#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pblocks/blocks1.hpp"
#include "pblocks/error.hpp"
#include "pblocks/reduce.hpp"

using namespace pblocks;

namespace {

std::shared_ptr<const Graph> share(Graph g)
{
    return std::make_shared<const Graph>(std::move(g));
}

std::vector<std::vector<Edge>> block_edges(const BlockCutTree &b)
{
    std::vector<std::vector<Edge>> out;
    for (const auto &n : b.nodes)
        if (n.kind == NodeKind::Block) {
            auto e = n.edges;
            std::sort(e.begin(), e.end());
            out.push_back(e);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_kind(const BlockCutTree &b, NodeKind k)
{
    return static_cast<std::size_t>(
        std::count_if(b.nodes.begin(), b.nodes.end(), [&](const DecompNode &n) { return n.kind == k; }));
}

} // namespace

TEST_CASE("cut_vertices")
{
    CHECK(cut_vertices(oracle::bowtie()) == std::vector<VertexId>{2});
    CHECK(cut_vertices(oracle::complete(4)).empty());
    CHECK(cut_vertices(oracle::path(4)) == std::vector<VertexId>{1, 2});
    CHECK_THROWS_AS(cut_vertices(oracle::graph({{0, 1}, {2, 3}})), Error);
}

TEST_CASE("cut_vertices agree with vertex removal")
{
    std::mt19937_64 rng(9);
    for (int round = 0; round < 100; ++round) {
        const Graph g = oracle::random_connected(rng, 3 + round % 10, round % 5);
        CHECK(cut_vertices(g) == oracle::articulation_points(g));
    }
}

TEST_CASE("b1_family")
{
    CHECK(b1_family(share(oracle::complete(4))).empty());
    CHECK(b1_family(share(oracle::bowtie())).size() == 2);

    // Two K4 joined by a path of length two: after reduction the middle
    // vertex is gone and two cut vertices remain.
    const Graph g = oracle::graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 8}, {8, 4},
                                   {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
    const auto r = homeomorphic_reduce(g);
    const auto f = b1_family(share(r.graph));
    CHECK(f.size() == 4);
    for (const auto &s : f.elements())
        CHECK(s.boundary().size() == 1);
}

TEST_CASE("bowtie block-cut tree")
{
    const auto b = block_cut_tree(share(oracle::bowtie()));
    REQUIRE(b.nodes.size() == 3);
    CHECK(count_kind(b, NodeKind::CutPoint) == 1);
    CHECK(count_kind(b, NodeKind::Block) == 2);
    CHECK(b.links.size() == 2);
    for (const auto &n : b.nodes)
        if (n.kind == NodeKind::CutPoint)
            CHECK(n.vertices == std::vector<VertexId>{2});
    CHECK(block_edges(b) == oracle::biconnected_components(oracle::bowtie()));
}

TEST_CASE("2-connected graph is one block")
{
    const auto b = block_cut_tree(share(oracle::cube()));
    REQUIRE(b.nodes.size() == 1);
    CHECK(b.nodes[0].kind == NodeKind::Block);
    CHECK(b.links.empty());
    CHECK(b.nodes[0].edges.size() == 12);
}

TEST_CASE("star has one cut point and three edge blocks")
{
    const auto b = block_cut_tree(share(oracle::graph({{0, 1}, {0, 2}, {0, 3}})));
    CHECK(count_kind(b, NodeKind::CutPoint) == 1);
    CHECK(count_kind(b, NodeKind::Block) == 3);
    CHECK(b.links.size() == 3);
}

TEST_CASE("disconnected input is rejected")
{
    try {
        block_cut_tree(share(oracle::graph({{0, 1}, {1, 2}, {2, 0}, {3, 4}})));
        FAIL("expected NotConnected");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotConnected);
    }
}

TEST_CASE("random connected graphs match the lowpoint oracle")
{
    std::mt19937_64 rng(77);
    for (int round = 0; round < 200; ++round) {
        const Graph g = oracle::random_connected(rng, 2 + round % 13, round % 7);
        const auto b = block_cut_tree(share(g));
        CHECK(block_edges(b) == oracle::biconnected_components(g));

        // Links join a cut point to a block, and the nodes form a tree.
        for (const auto &l : b.links)
            CHECK((b.nodes[l.from].kind == NodeKind::CutPoint) != (b.nodes[l.to].kind == NodeKind::CutPoint));
        CHECK(b.links.size() + 1 == b.nodes.size());

        std::vector<VertexId> cuts;
        for (const auto &n : b.nodes)
            if (n.kind == NodeKind::CutPoint)
                cuts.push_back(n.vertices.front());
        std::sort(cuts.begin(), cuts.end());
        CHECK(cuts == oracle::articulation_points(g));
        CHECK(verify_tree_correspondence(b.tree, b.family).empty());
    }
}
