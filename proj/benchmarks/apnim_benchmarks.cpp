#include <benchmark/benchmark.h>

#include "apnim/construction.hpp"
#include "apnim/periodicity.hpp"
#include "apnim/search.hpp"

namespace {

using namespace apnim;

void BM_NimSequenceFinite(benchmark::State& state) {
  const auto s = SubtractionSet::finite({1, 4, 12, 28, 73, 163, 343});
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nim_sequence(s, len));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NimSequenceFinite)->Range(1 << 10, 1 << 20);

void BM_NimSequenceTwoBlocks(benchmark::State& state) {
  const TernaryConstruction tc;
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nim_sequence(tc.I(), len));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NimSequenceTwoBlocks)->Range(1 << 8, 1 << 12);

void BM_PeriodAndPrefix(benchmark::State& state) {
  const auto s = SubtractionSet::finite({1, 4, 12, 28, 73, 163, 343, 867, 1915});
  for (auto _ : state) benchmark::DoNotOptimize(period_and_prefix(s));
}
BENCHMARK(BM_PeriodAndPrefix)->Unit(benchmark::kMillisecond);

void BM_RepWordPrefix(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const RepWord rw(RepresentingSequence::odd_fibonacci());
    benchmark::DoNotOptimize(rw.prefix(len));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RepWordPrefix)->Range(1 << 10, 1 << 20);

void BM_OddFibToZeck(benchmark::State& state) {
  const auto seq = RepresentingSequence::odd_fibonacci();
  std::vector<DigitString> inputs;
  for (Term n = 0; inputs.size() < 4096; ++n) {
    DigitString d = represent(seq, n * 1'000'003);
    if (d.empty() || (d[0] == 0 && !ends_in_two_block(d))) inputs.push_back(std::move(d));
  }
  for (auto _ : state) {
    for (const auto& d : inputs) benchmark::DoNotOptimize(odd_fib_to_zeck(d));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inputs.size()));
}
BENCHMARK(BM_OddFibToZeck);

void BM_GreedyChain(benchmark::State& state) {
  SearchOptions o;
  o.threads = static_cast<unsigned>(state.range(1));
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_chain(2, depth, true, o));
}
BENCHMARK(BM_GreedyChain)->Args({9, 1})->Args({11, 1})->Args({11, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
