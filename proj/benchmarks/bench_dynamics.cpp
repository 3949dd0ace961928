#include <benchmark/benchmark.h>

#include "mobsir/dynamics.hpp"
#include "mobsir/network.hpp"

using namespace mobsir;

namespace {

MobilityNetwork bench_network(std::size_t n) {
  return generate_random_network(n, 1e4, 1e6, 0.01, 42);
}

CompartmentState bench_state(const MobilityNetwork& net) {
  return seed_state(net, select_seed(net, {SeedVariant::WeakestConnected, 0}),
                    kDefaultSeedFraction);
}

void BM_Derivatives(benchmark::State& state) {
  const auto net = bench_network(static_cast<std::size_t>(state.range(0)));
  const auto initial = bench_state(net);
  const EpidemicParams params{0.5, 0.2, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(derivatives(initial, net, params));
  }
}
BENCHMARK(BM_Derivatives)->Arg(16)->Arg(100);

void BM_Step(benchmark::State& state) {
  const auto net = bench_network(static_cast<std::size_t>(state.range(0)));
  const auto initial = bench_state(net);
  const EpidemicParams params{0.5, 0.2, 0.5};
  const IntegratorConfig config{Scheme::RK4, 0.1, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(initial, net, params, config));
  }
}
BENCHMARK(BM_Step)->Arg(16)->Arg(100);

void BM_Simulate(benchmark::State& state) {
  const auto net = bench_network(static_cast<std::size_t>(state.range(0)));
  const auto initial = bench_state(net);
  const EpidemicParams params{0.5, 0.2, 0.5};
  const IntegratorConfig config{Scheme::RK4, 0.1, 300.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(net, params, initial, config));
  }
}
BENCHMARK(BM_Simulate)->Arg(16)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
