#include <benchmark/benchmark.h>

#include <random>

#include "osckit/classify.hpp"
#include "osckit/groups.hpp"

using namespace osckit;

namespace {

Mat2 scrambled_matrix(int word_length) {
    std::mt19937_64 rng(0xbe7c);
    std::uniform_int_distribution<int> pick(0, 3);
    const Mat2 gens[4] = {hat_A(), hat_A().inverse_unimodular(), hat_B(),
                          hat_B().inverse_unimodular()};
    Mat2 m = Mat2::identity();
    for (int i = 0; i < word_length; ++i) m = m * gens[pick(rng)];
    return conjugate(m, Mat2(2, 1, 1, 1));
}

void BM_DecomposeTrace(benchmark::State& state) {
    Int T(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(decompose_trace(T));
}
BENCHMARK(BM_DecomposeTrace)->Arg(20)->Arg(100)->Arg(500)->Arg(2000);

void BM_ReduceScrambled(benchmark::State& state) {
    Mat2 m = scrambled_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reduce_to_cycle(m));
}
BENCHMARK(BM_ReduceScrambled)->Arg(8)->Arg(16)->Arg(32);

void BM_FundamentalUnit(benchmark::State& state) {
    Int d(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fundamental_unit(d));
}
BENCHMARK(BM_FundamentalUnit)->Arg(2)->Arg(61)->Arg(9949)->Arg(39989);

void BM_EnumerateClasses(benchmark::State& state) {
    Int T(state.range(0));
    long r = state.range(1);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(T, r));
}
BENCHMARK(BM_EnumerateClasses)->Args({6, 4})->Args({7, 20})->Args({20, 12})->Args({60, 24});

void BM_Iso(benchmark::State& state) {
    GroupRep g1 = GroupRep::make(4, Mat2(5, 4, 1, 1), {1, 0});
    GroupRep g2 = GroupRep::make(4, conjugate(hat_B() * hat_A(), Mat2(5, 4, 1, 1)), {3, 2});
    for (auto _ : state) benchmark::DoNotOptimize(iso(g1, g2));
}
BENCHMARK(BM_Iso);

void BM_LatticeMembership(benchmark::State& state) {
    GroupRep rep = GroupRep::make(2, Mat2(5, 2, 2, 1), {1, 1});
    LatticeParams p = lattice_params_of_group(rep);
    ContGroup G(p.T);
    LatticeGenerators gen = lattice_generators(p);
    ContOsc g = G.mul(G.mul(gen.delta, gen.alpha), G.mul(gen.gamma, gen.beta));
    for (auto _ : state) benchmark::DoNotOptimize(lattice_contains(p, g));
}
BENCHMARK(BM_LatticeMembership);

}  // namespace

BENCHMARK_MAIN();
