#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pblocks/blocks1.hpp"
#include "pblocks/blocks2.hpp"
#include "pblocks/error.hpp"
#include "pblocks/symmetry.hpp"

using namespace pblocks;

namespace {

std::shared_ptr<const Graph> share(Graph g)
{
    return std::make_shared<const Graph>(std::move(g));
}

std::vector<std::vector<std::size_t>> sorted_elements(const AutGroup &h)
{
    auto e = h.elements;
    std::sort(e.begin(), e.end());
    return e;
}

// Orbits of the brute-force group, as sorted vertex id lists.
std::vector<std::vector<VertexId>> oracle_orbits(const Graph &g, const std::vector<std::vector<std::size_t>> &all)
{
    std::set<std::vector<VertexId>> orbits;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        std::set<VertexId> o;
        for (const auto &p : all)
            o.insert(g.vertex_at(p[i]));
        orbits.emplace(o.begin(), o.end());
    }
    return {orbits.begin(), orbits.end()};
}

} // namespace

TEST_CASE("automorphism_group orders")
{
    CHECK(automorphism_group(oracle::complete(4)).order == 24);
    CHECK(automorphism_group(oracle::cycle(6)).order == 12);
    CHECK(automorphism_group(oracle::petersen()).order == 120);
    CHECK(automorphism_group(oracle::cube()).order == 48);
    // Smallest asymmetric tree: path 0..5 with a leaf hung at 2.
    const Graph tree = oracle::graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
    CHECK(oracle::automorphisms_by_permutations(tree).size() == 1);
    CHECK(automorphism_group(tree).order == 1);
}

TEST_CASE("automorphism_group matches brute force")
{
    std::mt19937_64 rng(21);
    for (int round = 0; round < 120; ++round) {
        const Graph g = oracle::random_gnp(rng, 3 + round % 6, 0.2 + 0.1 * (round % 7));
        const auto brute = oracle::automorphisms_by_permutations(g);
        const auto h = automorphism_group(g);
        CHECK(h.order == brute.size());
        CHECK(sorted_elements(h) == brute);
        CHECK(vertex_orbits(g, h.generators) == oracle_orbits(g, brute));
        for (const auto &p : h.generators) {
            CHECK(is_automorphism(g, p));
            CHECK(!is_identity(p));
        }
    }
}

TEST_CASE("generators only on larger vertex-transitive graphs")
{
    // Prism over a 12-gon: dihedral of order 24 times the swap of the rings.
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId i = 0; i < 12; ++i) {
        pairs.emplace_back(i, (i + 1) % 12);
        pairs.emplace_back(i + 12, (i + 1) % 12 + 12);
        pairs.emplace_back(i, i + 12);
    }
    const auto h = automorphism_generators_only(oracle::from_pairs(pairs, 24));
    CHECK(h.order == 48);
    CHECK(!h.materialized());
    CHECK_THROWS_AS(automorphism_group(oracle::from_pairs(pairs, 24)), Error);
}

TEST_CASE("stabilizers and free actions")
{
    const auto h = automorphism_group(oracle::cycle(6));
    CHECK(stabilizer_order(h, 0) == 2);
    CHECK(!acts_freely(h));
    const auto t = automorphism_group(oracle::graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}}));
    CHECK(acts_freely(t));
}

TEST_CASE("quotient_graph")
{
    SUBCASE("cycle collapses to one vertex and one edge orbit")
    {
        const Graph c6 = oracle::cycle(6);
        const auto q = quotient_graph(c6, automorphism_group(c6));
        CHECK(q.vertex_orbits.size() == 1);
        CHECK(q.edge_orbits.size() == 1);
        CHECK(q.edge_orbits[0].loop);
    }
    SUBCASE("trivial group gives the graph back")
    {
        const Graph g = oracle::graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
        const auto q = quotient_graph(g, automorphism_group(g));
        CHECK(q.vertex_orbits.size() == g.vertex_count());
        CHECK(q.edge_orbits.size() == g.edge_count());
    }
    SUBCASE("bowtie")
    {
        const Graph g = oracle::bowtie();
        const auto q = quotient_graph(g, automorphism_group(g));
        CHECK(q.vertex_orbits == std::vector<std::vector<VertexId>>{{0, 1, 3, 4}, {2}});
        // Spokes at the centre form one orbit; the outer edges 0-1, 3-4 another.
        CHECK(q.edge_orbits.size() == 2);
    }
}

TEST_CASE("tree_action_check")
{
    SUBCASE("bowtie block-cut tree")
    {
        auto g = share(oracle::bowtie());
        const auto b = block_cut_tree(g);
        CHECK(tree_action_check(b.tree, b.family, automorphism_group(*g)).empty());
    }
    SUBCASE("trivial group")
    {
        auto g = share(oracle::graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}}));
        const auto b = block_cut_tree(g);
        CHECK(tree_action_check(b.tree, b.family, automorphism_group(*g)).empty());
    }
    SUBCASE("family missing an orbit member")
    {
        // Star with three leaves: keep only one of the three leaf sides.
        auto g = share(oracle::graph({{0, 1}, {0, 2}, {0, 3}}));
        const auto full = b1_family(g);
        const auto f = NestedFamily::from({full[0]});
        const auto t = build_structure_tree(f);
        const auto report = tree_action_check(t, f, automorphism_group(*g));
        CHECK(!report.empty());
    }
    SUBCASE("triblock trees of random graphs")
    {
        std::mt19937_64 rng(6);
        for (int round = 0; round < 60; ++round) {
            const Graph g = oracle::random_two_connected(rng, 5 + round % 5);
            const auto tb = triblock_tree(g);
            CHECK(tree_action_check(tb.tree, tb.family, automorphism_group(g)).empty());
        }
    }
}

TEST_CASE("permutation helpers")
{
    const Permutation a{1, 2, 0};
    const Permutation b{0, 2, 1};
    CHECK(compose(a, inverse(a)) == identity_permutation(3));
    CHECK(compose(a, b) == Permutation{1, 0, 2});
    CHECK(!is_automorphism(oracle::path(3), a));
    CHECK(is_automorphism(oracle::path(3), Permutation{2, 1, 0}));
}
