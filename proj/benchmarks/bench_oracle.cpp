#include <memory>
#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "qdcat/closed_form.hpp"
#include "qdcat/fock_oracle.hpp"
#include "qdcat/qubit_embed.hpp"

using namespace qdcat;

namespace {

// Fresh Hamiltonian per iteration so the spectral cache build is included.
void propagate(benchmark::State& state, Propagation method) {
  const double alpha = static_cast<double>(state.range(0)) / 2.0;
  const auto sup = make_odd_cat(alpha);
  auto space = std::make_shared<const FockSpace>(FockSpace::for_superposition(sup, 80));
  const auto initial = prepare_initial(sup, space);
  EvolveOptions opts;
  opts.method = method;
  for (auto _ : state) {
    const auto h = build_hamiltonian(SystemParams::symmetric(), space, opts);
    for (double t : {0.4, 1.3, 2.2}) benchmark::DoNotOptimize(h->evolve(initial, t).amplitudes().data());
  }
  state.counters["dim"] = static_cast<double>(space->dim());
}

void BM_EvolveBlocks(benchmark::State& state) { propagate(state, Propagation::Blocks); }
void BM_EvolveFullDense(benchmark::State& state) { propagate(state, Propagation::FullDense); }

void BM_EvolveCached(benchmark::State& state) {
  const auto sup = make_odd_cat(static_cast<double>(state.range(0)) / 2.0);
  auto space = std::make_shared<const FockSpace>(FockSpace::for_superposition(sup, 80));
  const auto h = build_hamiltonian(SystemParams::symmetric(), space);
  const auto initial = prepare_initial(sup, space);
  h->evolve(initial, 0.1);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(ideal_oracle_sample(*h, initial, sup, SystemParams::symmetric(), t).concurrence);
  }
}

void BM_Wootters(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = {n(rng), n(rng)};
  Eigen::Matrix4cd m = g * g.adjoint();
  m /= m.trace();
  const TwoQubitDensity rho(m);
  for (auto _ : state) benchmark::DoNotOptimize(wootters_concurrence(rho));
}

void BM_WoottersM12Route(benchmark::State& state) {
  const TwoQubitDensity rho(odd_cat_matrix(1.0, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(m12_lambdas(rho));
}

void BM_ClosedFormSweep(benchmark::State& state) {
  const auto grid = TimeGrid::uniform(2.0, 401);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += concurrence_odd(1.0, grid.gt(i));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

void BM_DampedPeaks(benchmark::State& state) {
  const auto params = SystemParams::symmetric(0.04);
  for (auto _ : state) benchmark::DoNotOptimize(dissipative_peaks(2.0, params, 6));
}

void BM_AmplitudeOde(benchmark::State& state) {
  const auto params = SystemParams::symmetric(0.13);
  const auto grid = TimeGrid::uniform(4.0, 801);
  for (auto _ : state) benchmark::DoNotOptimize(dissipative_amplitude_ode(params, grid));
}

}  // namespace

// range(0) = 2 |alpha|
BENCHMARK(BM_EvolveBlocks)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveFullDense)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveCached)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Wootters);
BENCHMARK(BM_WoottersM12Route);
BENCHMARK(BM_ClosedFormSweep);
BENCHMARK(BM_DampedPeaks)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AmplitudeOde)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
