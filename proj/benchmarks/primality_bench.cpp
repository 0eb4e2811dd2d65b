#include <benchmark/benchmark.h>

#include "amicable/primality.hpp"

namespace {

namespace pr = amicable::primality;

void BM_LucasLehmer(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pr::lucas_lehmer(p));
}
BENCHMARK(BM_LucasLehmer)->Arg(521)->Arg(2203)->Arg(4423)->Unit(benchmark::kMillisecond);

void BM_LlrRiesel(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pr::llr_riesel(3, n));
}
BENCHMARK(BM_LlrRiesel)->Arg(106)->Arg(1000)->Arg(4422)->Unit(benchmark::kMillisecond);

void BM_SmallFactorSieve(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pr::small_factor_sieve(3, 216090, -1, bound));
}
BENCHMARK(BM_SmallFactorSieve)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_MillerRabinDeterministic(benchmark::State& state) {
  const auto value = pr::FormDescriptor::k_two_n_minus_1(3, 63).value();
  for (auto _ : state) benchmark::DoNotOptimize(pr::miller_rabin_deterministic(value));
}
BENCHMARK(BM_MillerRabinDeterministic);

void BM_Pepin(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pr::pepin(k));
}
BENCHMARK(BM_Pepin)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace
