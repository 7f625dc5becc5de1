#include <benchmark/benchmark.h>

#include <optional>

#include "itbounds/bounds.hpp"
#include "itbounds/channels.hpp"
#include "itbounds/ensembles.hpp"
#include "itbounds/solver.hpp"

namespace {

itb::DegreePair benchmark_pair() {
  return itb::make_degree_pair(
      {{2, 0.38354}, {3, 0.04237}, {4, 0.57409}},
      {{5, 0.24123}, {6, 0.75877}});
}

void BM_CapacityBiawgn(benchmark::State& state) {
  auto ch = itb::MbiosChannel::make_biawgn(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(itb::capacity(ch));
  }
}
BENCHMARK(BM_CapacityBiawgn);

void BM_MomentGridBuild(benchmark::State& state) {
  auto ch = itb::MbiosChannel::make_biawgn(1.0);
  for (auto _ : state) {
    auto seq = itb::moment_sequence(ch);
    benchmark::DoNotOptimize(seq->next());
  }
}
BENCHMARK(BM_MomentGridBuild);

void BM_SeriesSum(benchmark::State& state) {
  auto ch = itb::MbiosChannel::make_biawgn(1.0);
  auto gamma = itb::check_node_distribution(benchmark_pair());
  for (auto _ : state) {
    auto seq = itb::moment_sequence(ch);
    benchmark::DoNotOptimize(itb::series_sum(*seq, gamma));
  }
}
BENCHMARK(BM_SeriesSum);

void BM_RateBound(benchmark::State& state) {
  auto ch = itb::MbiosChannel::make_biawgn(0.978);
  auto gamma = itb::check_node_distribution(benchmark_pair());
  for (auto _ : state) {
    benchmark::DoNotOptimize(itb::rate_upper_bound(ch, gamma));
  }
}
BENCHMARK(BM_RateBound);

void BM_Threshold(benchmark::State& state) {
  auto dp = benchmark_pair();
  for (auto _ : state) {
    benchmark::DoNotOptimize(itb::threshold(itb::ChannelFamily::biawgn, dp, std::nullopt,
                                            itb::BoundKind::unquantized));
  }
}
BENCHMARK(BM_Threshold);

}  // namespace

BENCHMARK_MAIN();
