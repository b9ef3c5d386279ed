#include <benchmark/benchmark.h>

#include "liouville/artin.hpp"
#include "liouville/constructions.hpp"
#include "liouville/debruijn.hpp"
#include "liouville/dimension.hpp"
#include "liouville/exact.hpp"

using namespace liouville;

static void BM_DeBruijn(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_debruijn(2, n));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_DeBruijn)->Arg(12)->Arg(16)->Arg(20);

static void BM_AlphaPrefix(benchmark::State& state) {
    const auto len = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(take_prefix(ConstructionRecipe::alpha(), len));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(len));
}
BENCHMARK(BM_AlphaPrefix)->Arg(104330)->Arg(3090314);

static void BM_SlidingCounts(benchmark::State& state) {
    const Digits x = take_prefix(ConstructionRecipe::alpha(), 3090314);
    const auto m = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(block_frequencies(x, m, CountMode::Sliding, 2));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_SlidingCounts)->Arg(4)->Arg(12);

static void BM_SlidingCountsParallel(benchmark::State& state) {
    const Digits x = take_prefix(ConstructionRecipe::alpha(), 3090314);
    const auto chunks = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(block_frequencies_parallel(x, 12, CountMode::Sliding, 2, chunks));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_SlidingCountsParallel)->Arg(2)->Arg(4)->Arg(8)->UseRealTime();

static void BM_VerifyAlpha(benchmark::State& state) {
    const auto stage = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_liouville_stage(ConstructionRecipe::alpha(), stage));
}
BENCHMARK(BM_VerifyAlpha)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_VerifyPsi1(benchmark::State& state) {
    const auto stage = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_liouville_stage(ConstructionRecipe::psi1(), stage));
}
BENCHMARK(BM_VerifyPsi1)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SimultaneousPrimes(benchmark::State& state) {
    const std::vector<std::uint64_t> bases{2, 3};
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(artin::find_simultaneous_primes(bases, limit));
}
BENCHMARK(BM_SimultaneousPrimes)->Arg(10000)->Arg(1000000);

static void BM_Gamma(benchmark::State& state) {
    const auto recipe = artin::make_gamma_recipe({2, 3}, 3);
    for (auto _ : state) benchmark::DoNotOptimize(artin::build_gamma(recipe));
}
BENCHMARK(BM_Gamma)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
