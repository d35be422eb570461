// Serial reference vs OpenMP replicate loop for the three main samplers.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "dust/coalescent.hpp"
#include "dust/parallel.hpp"
#include "dust/subordinator.hpp"

using namespace dust;

namespace {

constexpr std::int64_t kReplicates = 2000;

const RateTable& beta_rates() {
  static RateTable rates(MeasureSpec::beta(1.5, 1.0));
  return rates;
}

auto coalescent_job(std::int64_t n) {
  return [n](std::int64_t i) {
    Rng rng(1, static_cast<std::uint64_t>(i));
    return simulate_full(beta_rates(), n, rng).X;
  };
}

void BM_CoalescentSerial(benchmark::State& state) {
  const auto job = coalescent_job(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates_serial(kReplicates, job));
  state.SetItemsProcessed(state.iterations() * kReplicates);
}

void BM_CoalescentParallel(benchmark::State& state) {
  const auto job = coalescent_job(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates(kReplicates, jobs, job));
  state.SetItemsProcessed(state.iterations() * kReplicates);
}

void BM_DustChainSerial(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  auto job = [n](std::int64_t i) {
    Rng rng(2, static_cast<std::uint64_t>(i));
    return simulate_dust_chain(beta_rates(), n, rng).tau_star;
  };
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates_serial(kReplicates, job));
  state.SetItemsProcessed(state.iterations() * kReplicates);
}

void BM_DustChainParallel(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const int jobs = static_cast<int>(state.range(1));
  auto job = [n](std::int64_t i) {
    Rng rng(2, static_cast<std::uint64_t>(i));
    return simulate_dust_chain(beta_rates(), n, rng).tau_star;
  };
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates(kReplicates, jobs, job));
  state.SetItemsProcessed(state.iterations() * kReplicates);
}

void BM_ExpFunctionalSerial(benchmark::State& state) {
  const ExpFunctionalSampler sampler(MeasureSpec::gamma_phi(1.0, 1.0), 1.0, 0.0);
  auto job = [&](std::int64_t i) {
    Rng rng(3, static_cast<std::uint64_t>(i));
    return sampler.sample(rng);
  };
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates_serial(kReplicates, job));
  state.SetItemsProcessed(state.iterations() * kReplicates);
}

void BM_ExpFunctionalParallel(benchmark::State& state) {
  const ExpFunctionalSampler sampler(MeasureSpec::gamma_phi(1.0, 1.0), 1.0, 0.0);
  const int jobs = static_cast<int>(state.range(0));
  auto job = [&](std::int64_t i) {
    Rng rng(3, static_cast<std::uint64_t>(i));
    return sampler.sample(rng);
  };
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates(kReplicates, jobs, job));
  state.SetItemsProcessed(state.iterations() * kReplicates);
}

void thread_counts(benchmark::internal::Benchmark* b, bool with_n) {
  const int max_jobs = omp_get_num_procs();
  for (int j = 2; j <= std::max(2, max_jobs); j *= 2) {
    if (with_n) {
      b->Args({1000, j});
      b->Args({10000, j});
    } else {
      b->Arg(j);
    }
  }
}

}  // namespace

BENCHMARK(BM_CoalescentSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoalescentParallel)
    ->Apply([](auto* b) { thread_counts(b, true); })
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_DustChainSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DustChainParallel)
    ->Apply([](auto* b) { thread_counts(b, true); })
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_ExpFunctionalSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpFunctionalParallel)
    ->Apply([](auto* b) { thread_counts(b, false); })
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
