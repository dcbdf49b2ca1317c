#include <random>

#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "pblocks/blocks1.hpp"
#include "pblocks/blocks2.hpp"
#include "pblocks/cayley.hpp"
#include "pblocks/planar.hpp"
#include "pblocks/symmetry.hpp"

using namespace pblocks;

namespace {

Graph sized_graph(std::int64_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return oracle::random_connected(rng, static_cast<std::size_t>(n), static_cast<std::size_t>(n / 2));
}

Graph sized_two_connected(std::int64_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return oracle::random_two_connected(rng, static_cast<std::size_t>(n));
}

void BM_BlockCutTree(benchmark::State &state)
{
    auto g = std::make_shared<const Graph>(sized_graph(state.range(0), 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(block_cut_tree(g));
}
BENCHMARK(BM_BlockCutTree)->RangeMultiplier(2)->Range(16, 256);

void BM_TriblockTree(benchmark::State &state)
{
    const Graph g = sized_two_connected(state.range(0), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(triblock_tree(g));
}
BENCHMARK(BM_TriblockTree)->DenseRange(8, 20, 4);

void BM_PlanarityTest(benchmark::State &state)
{
    std::vector<std::pair<VertexId, VertexId>> grid;
    const auto k = static_cast<VertexId>(state.range(0));
    for (VertexId r = 0; r < k; ++r)
        for (VertexId c = 0; c < k; ++c) {
            if (c + 1 < k)
                grid.emplace_back(r * k + c, r * k + c + 1);
            if (r + 1 < k)
                grid.emplace_back(r * k + c, (r + 1) * k + c);
        }
    const Graph g = oracle::from_pairs(grid);
    for (auto _ : state)
        benchmark::DoNotOptimize(planarity_test(g));
}
BENCHMARK(BM_PlanarityTest)->DenseRange(4, 16, 4);

void BM_AutomorphismGenerators(benchmark::State &state)
{
    const Graph g = oracle::wheel(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(automorphism_generators_only(g));
}
BENCHMARK(BM_AutomorphismGenerators)->DenseRange(6, 30, 8);

void BM_CosetEnumeration(benchmark::State &state)
{
    const auto pr = surface_presentation(0, {2, 3, static_cast<int>(state.range(0))}, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(coset_enumerate(pr, 100000));
}
BENCHMARK(BM_CosetEnumeration)->DenseRange(3, 5);

} // namespace

BENCHMARK_MAIN();
