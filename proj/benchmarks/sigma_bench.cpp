#include <benchmark/benchmark.h>

#include <random>

#include "amicable/numerics.hpp"
#include "amicable/sequences.hpp"

namespace {

using amicable::Natural;
namespace nm = amicable::numerics;

void BM_SigmaProperSmall(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<std::uint64_t> dist(1, 100'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(nm::sigma_proper(Natural(dist(gen))));
}
BENCHMARK(BM_SigmaProperSmall);

void BM_SigmaProperBruteforce(benchmark::State& state) {
  const Natural n(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nm::sigma_proper_bruteforce(n));
}
BENCHMARK(BM_SigmaProperBruteforce)->Arg(9363584)->Arg(99'999'989);

// r_n = 2^n * a_n * b_n; cost is dominated by the primality checks on a_n and b_n.
void BM_SigmaThabitR(benchmark::State& state) {
  const auto t = amicable::sequences::thabit_triple(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nm::sigma_proper(t.r));
}
BENCHMARK(BM_SigmaThabitR)->Arg(4)->Arg(7)->Arg(20);

void BM_FactorizeSemiprime(benchmark::State& state) {
  const Natural n = Natural(1'000'000'007ull) * Natural(998'244'353ull);
  for (auto _ : state) benchmark::DoNotOptimize(nm::factorize(n));
}
BENCHMARK(BM_FactorizeSemiprime);

}  // namespace
