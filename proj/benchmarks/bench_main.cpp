#include <benchmark/benchmark.h>

#include <mzm/bdg.hpp>
#include <mzm/evolution.hpp>
#include <mzm/holonomy.hpp>
#include <mzm/junction.hpp>
#include <mzm/lattice.hpp>

using namespace mzm;

namespace {

ModelParams bench_model() {
  ModelParams m;
  m.mu_fi = 0.3;
  m.mu_sc = 0.1;
  return m;
}

void BM_MatchInterface(benchmark::State& state) {
  ModelParams model = bench_model();
  double alpha = 0.0;
  for (auto _ : state) {
    alpha += 0.01;
    benchmark::DoNotOptimize(match_interface(model, {0.5 * pi, alpha}));
  }
}
BENCHMARK(BM_MatchInterface);

void BM_SamplerFull(benchmark::State& state) {
  ModelParams model = bench_model();
  GridPtr grid = junction_grid(model, {0.5 * pi, 0.0},
                               static_cast<int>(state.range(0)));
  auto sample = sampler(model, grid);
  double alpha = 0.0;
  for (auto _ : state) {
    alpha += 0.01;
    benchmark::DoNotOptimize(sample({0.5 * pi, alpha}));
  }
}
BENCHMARK(BM_SamplerFull)->Arg(1001)->Arg(4001);

void BM_RegionLoopPhase(benchmark::State& state) {
  ModelParams model = bench_model();
  GridPtr grid = region_grid(model, {0.5 * pi, 0.0}, Region::FI, 2001);
  auto sample = region_sampler(model, grid, Region::FI);
  const ParamPath path = alpha_loop(0.5 * pi, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(path_phase(sample, path));
}
BENCHMARK(BM_RegionLoopPhase)->Arg(64)->Arg(400);

void BM_LatticeZeroMode(benchmark::State& state) {
  ModelParams model = bench_model();
  LatticeSpec spec{static_cast<int>(state.range(0)), 24.0 / state.range(0), 1.0};
  LatticeHamiltonian lat = build_lattice(model, {0.5 * pi, 0.0}, spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(zero_mode_numeric(lat));
}
BENCHMARK(BM_LatticeZeroMode)->Unit(benchmark::kMillisecond)->Arg(120)->Arg(240);

void BM_LatticeRotatedSample(benchmark::State& state) {
  // Covariance shortcut: the theta eigensolve is memoized on first touch,
  // each iteration pays only the diagonal rotation + sign fix.
  ModelParams model = bench_model();
  LatticeSpec spec{200, 0.12, 1.0};
  auto sample = lattice_sampler(model, spec);
  benchmark::DoNotOptimize(sample({0.5 * pi, 0.0}));  // warm the memo
  double alpha = 0.0;
  for (auto _ : state) {
    alpha += 0.01;
    benchmark::DoNotOptimize(sample({0.5 * pi, alpha}));
  }
}
BENCHMARK(BM_LatticeRotatedSample);

void BM_EvolveStep(benchmark::State& state) {
  ModelParams model = bench_model();
  LatticeSpec spec{64, 0.3, 1.0};
  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, spec));
  VectorXcd psi0(4 * spec.n_sites);
  for (int j = 0; j < spec.n_sites; ++j)
    psi0.segment<4>(4 * j) = to_bdg_column(Vector4cd(zm.mode.comps.col(j)));
  psi0.normalize();
  Generator gen = [&](double t) {
    return build_lattice(model, {0.5 * pi, 0.01 * t}, spec).h;
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve(gen, psi0, Schedule{0.25, 1}));
}
BENCHMARK(BM_EvolveStep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
