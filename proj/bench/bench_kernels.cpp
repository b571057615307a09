// Serial references against the OpenMP kernels on a ground-plane helix.
// Thread count comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numbers>

#include "holo/threestate.hpp"

namespace {

holo::PlaneSampler helix_path() {
  holo::three::HelixSpec h;
  h.omega_theta = 2 * std::numbers::pi;
  h.omega_phi = -4 * std::numbers::pi;
  return [h](double lam) { return holo::three::ground_plane(h.at(lam)); };
}

void BM_transport_serial(benchmark::State& st) {
  const auto path = helix_path();
  for (auto _ : st) benchmark::DoNotOptimize(holo::serial::continuous_transport(path, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_transport_parallel(benchmark::State& st) {
  const auto path = helix_path();
  for (auto _ : st) benchmark::DoNotOptimize(holo::continuous_transport(path, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_intermediate_serial(benchmark::State& st) {
  const auto path = helix_path();
  for (auto _ : st) benchmark::DoNotOptimize(holo::serial::intermediate_holonomies(path, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_intermediate_parallel(benchmark::State& st) {
  const auto path = helix_path();
  for (auto _ : st) benchmark::DoNotOptimize(holo::intermediate_holonomies(path, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_transport_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transport_parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_intermediate_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_intermediate_parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
