// Serial reference vs OpenMP kernels. The second argument of the parallel
// variants is the thread count.
#include <benchmark/benchmark.h>

#include <omp.h>

#include <vector>

#include "pscheb/dynamics.hpp"
#include "pscheb/hamiltonian.hpp"
#include "pscheb/pseudospectrum.hpp"
#include "pscheb/spectral.hpp"

using namespace pscheb;

namespace {

CMatrix bender(int order) {
  return assemble_hamiltonian(PotentialSpec::bender_liouville(1, 0, 3), {3.0, order, std::nullopt})
      .entries;
}

const Window window{-20, 40, -30, 30};

std::vector<double> times(int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = 50.0 * i / (n - 1);
  return t;
}

std::vector<FlowSeed> seeds() {
  std::vector<FlowSeed> s;
  for (double re = -3; re <= 3; re += 0.25) s.push_back({{re, 0.3}, re < 0 ? 1 : -1});
  return s;
}

FlowOptions flow_opts() {
  FlowOptions o;
  o.t_max = 5;
  o.sample_interval = 0.05;
  return o;
}

void BM_field_serial(benchmark::State& st) {
  const CMatrix h = bender(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::field(h, window, 41));
}

void BM_field_parallel(benchmark::State& st) {
  const CMatrix h = bender(static_cast<int>(st.range(0)));
  omp_set_num_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(field(h, window, 41));
}

void BM_evolution_serial(benchmark::State& st) {
  const CMatrix h = assemble_hamiltonian(PotentialSpec::liouville(1.0), DomainSpec::periodic(1, 70)).entries;
  const auto t = times(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::evolution_norm(h, t));
}

void BM_evolution_parallel(benchmark::State& st) {
  const CMatrix h = assemble_hamiltonian(PotentialSpec::liouville(1.0), DomainSpec::periodic(1, 70)).entries;
  const auto t = times(static_cast<int>(st.range(0)));
  omp_set_num_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(evolution_norm(h, t));
}

void BM_flow_serial(benchmark::State& st) {
  const auto s = seeds();
  for (auto _ : st)
    benchmark::DoNotOptimize(serial::flow_bundle(PotentialSpec::liouville(1.0), 1.0, s, flow_opts()));
}

void BM_flow_parallel(benchmark::State& st) {
  const auto s = seeds();
  omp_set_num_threads(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(flow_bundle(PotentialSpec::liouville(1.0), 1.0, s, flow_opts()));
}

}  // namespace

BENCHMARK(BM_field_serial)->Arg(30)->Arg(70)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_field_parallel)->ArgsProduct({{30, 70}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_evolution_serial)->Arg(51)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evolution_parallel)->ArgsProduct({{51}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_flow_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_flow_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
