#include <benchmark/benchmark.h>

#include <cmath>

#include "fhartree/diagnostics.hpp"
#include "fhartree/evolution.hpp"
#include "fhartree/fft.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/log.hpp"

using namespace fhartree;

namespace {

SpectralField bump(const GridSpec& grid) {
  return SpectralField::sample(grid, [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
}

GridSpec grid_for(const benchmark::State& state) { return make_grid(2, static_cast<int>(state.range(0)), 32.0); }

}  // namespace

static void BM_ForwardTransform(benchmark::State& state) {
  const auto grid = grid_for(state);
  const auto u = bump(grid);
  for (auto _ : state) benchmark::DoNotOptimize(to_fourier(u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_ForwardTransform)->Arg(64)->Arg(128)->Arg(256);

static void BM_HartreeKernelBuild(benchmark::State& state) {
  const auto grid = grid_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(build_hartree_kernel(grid, 1.6));
}
BENCHMARK(BM_HartreeKernelBuild)->Arg(64)->Arg(128);

static void BM_HartreePotential(benchmark::State& state) {
  const auto grid = grid_for(state);
  const MultiplierSet mult(canonical_params(), grid);
  const auto u = bump(grid);
  for (auto _ : state) benchmark::DoNotOptimize(hartree_potential(u, mult));
}
BENCHMARK(BM_HartreePotential)->Arg(64)->Arg(128)->Arg(256);

static void BM_StrangStep(benchmark::State& state) {
  const auto grid = grid_for(state);
  const MultiplierSet mult(canonical_params(), grid);
  auto u = bump(grid);
  for (auto _ : state) {
    u = strang_step(u, mult, 1e-3);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_StrangStep)->Arg(64)->Arg(128)->Arg(256);

static void BM_GroundStateSolve(benchmark::State& state) {
  const auto grid = grid_for(state);
  const MultiplierSet mult(canonical_params(), grid);
  set_warning_sink({});
  for (auto _ : state) benchmark::DoNotOptimize(solve_ground_state(canonical_params(), mult));
}
BENCHMARK(BM_GroundStateSolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_VirialRhs(benchmark::State& state) {
  const auto grid = grid_for(state);
  const auto p = canonical_params();
  const MultiplierSet mult(p, grid);
  const CutoffPhi phi(grid, 0.25 * grid.L);
  const auto quad = QuadratureRule::make(p.s, 200);
  const auto u = bump(grid);
  for (auto _ : state) benchmark::DoNotOptimize(virial_rhs(u, phi, p, mult, quad));
}
BENCHMARK(BM_VirialRhs)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
