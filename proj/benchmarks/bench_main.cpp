// Microbenchmarks for the hot paths: order arithmetic, chain reports as a
// function of depth, the exhaustive core oracle, and the witness search.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "steinitz/chain.hpp"
#include "steinitz/dynamics.hpp"
#include "steinitz/families.hpp"
#include "steinitz/finite_quotient.hpp"
#include "steinitz/steinitz_number.hpp"

using namespace steinitz;

namespace {

std::vector<SteinitzNumber> random_numbers(std::size_t count) {
  constexpr std::uint64_t pool[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> nprimes(0, 5), pick(0, 9), expo(1, 6);
  std::vector<SteinitzNumber> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<SteinitzNumber::Entry> es;
    std::uint64_t last = 0;
    for (int j = nprimes(rng); j > 0; --j) {
      std::uint64_t p = pool[pick(rng)];
      if (p <= last) continue;
      es.push_back({p, Exponent(static_cast<std::uint64_t>(expo(rng)))});
      last = p;
    }
    out.push_back(SteinitzNumber::make(std::move(es)));
  }
  return out;
}

void BM_steinitz_lcm(benchmark::State& state) {
  auto nums = random_numbers(256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcm(nums[i % 256], nums[(i + 1) % 256]));
    ++i;
  }
}
BENCHMARK(BM_steinitz_lcm);

void BM_steinitz_mul_tailed(benchmark::State& state) {
  SteinitzNumber a = SteinitzNumber::make(
      {{2, Exponent(5)}}, TailRule{PrimeStream::all_primes_excluding({2}), Exponent(2)});
  SteinitzNumber b = SteinitzNumber::make(
      {{3, Exponent(1)}}, TailRule{PrimeStream::all_primes_excluding({3}), Exponent(1)});
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_steinitz_mul_tailed);

void BM_chain_report_selfembed(benchmark::State& state) {
  std::size_t depth = static_cast<std::size_t>(state.range(0));
  ChainSpec spec = build_chain(HeisenbergSelfEmbed{2}, depth);
  for (auto _ : state) benchmark::DoNotOptimize(chain_report(spec));
  state.SetComplexityN(static_cast<std::int64_t>(depth));
}
BENCHMARK(BM_chain_report_selfembed)->DenseRange(1, 6)->Complexity();

void BM_chain_report_wild(benchmark::State& state) {
  ChainSpec spec =
      build_chain(HeisenbergWild{{2, 3, 5}, 2, 1, {}},
                  static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chain_report(spec));
}
BENCHMARK(BM_chain_report_wild)->DenseRange(1, 4);

void BM_core_oracle(benchmark::State& state) {
  FiniteQuotient q = FiniteQuotient::heisenberg_mod(16, 16, 16);
  ElementSet s = q.enumerate_subgroup(
      image_in_quotient(q, HeisenbergScales{Factored::from_integer(2),
                                            Factored::from_integer(2),
                                            Factored::from_integer(4)}),
      100000);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_core_of_set(q, s));
}
BENCHMARK(BM_core_oracle);

void BM_witness_search(benchmark::State& state) {
  ChainSpec spec = build_chain(HeisenbergWild{{2, 3, 5}, 2, 1, {}}, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wild_witness_search(spec, 1, 2, 100000));
  }
}
BENCHMARK(BM_witness_search);

void BM_freeness_probe(benchmark::State& state) {
  ChainSpec spec = build_chain(ToyModel{2, 3, 2}, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(topological_freeness_probe(spec, 3, 1, 100000));
  }
}
BENCHMARK(BM_freeness_probe);

}  // namespace

BENCHMARK_MAIN();
