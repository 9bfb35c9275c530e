#include "ssns/abeta_weight.hpp"
#include "ssns/force_library.hpp"
#include "ssns/solver.hpp"
#include "ssns/sphere_calculus.hpp"
#include "ssns/stokes.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_BuildGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ssns::build_grid(5, state.range(0)));
}
BENCHMARK(BM_BuildGrid)->Arg(32)->Arg(64)->Arg(128);

void BM_StokesAssemble(benchmark::State& state) {
  ssns::GridPtr g = ssns::build_grid(5, state.range(0));
  for (auto _ : state) {
    ssns::StokesSystem sys(g);
    benchmark::DoNotOptimize(sys.rcond());
  }
}
BENCHMARK(BM_StokesAssemble)->Arg(32)->Arg(64);

void BM_StokesSolve(benchmark::State& state) {
  ssns::GridPtr g = ssns::build_grid(5, state.range(0));
  ssns::StokesSystem sys(g);
  ssns::ForceSpec f = ssns::make_force("radial-cosine", 1e-2, g);
  const Eigen::VectorXd rhs = sys.rhs(f);
  for (auto _ : state) benchmark::DoNotOptimize(sys.solve(rhs));
}
BENCHMARK(BM_StokesSolve)->Arg(32)->Arg(64)->Arg(128);

void BM_AdvectionProfiles(benchmark::State& state) {
  ssns::GridPtr g = ssns::build_grid(5, state.range(0));
  ssns::AxisymField v(g, g->x, (1.0 - g->x.array().square()).matrix());
  for (auto _ : state) benchmark::DoNotOptimize(ssns::advection_profiles(v));
}
BENCHMARK(BM_AdvectionProfiles)->Arg(64)->Arg(128);

void BM_SelfsimSolve(benchmark::State& state) {
  ssns::GridPtr g = ssns::build_grid(5, 32);
  ssns::StokesSystem sys(g);
  ssns::ForceSpec f = ssns::make_force("radial-cosine", 5e-2, g);
  for (auto _ : state) {
    ssns::SelfsimSolution sol = ssns::solve_selfsimilar(sys, f);
    benchmark::DoNotOptimize(sol.residual_norm);
  }
}
BENCHMARK(BM_SelfsimSolve);

void BM_AbetaProduct(benchmark::State& state) {
  ssns::WeightConfig cfg;
  cfg.n = 5;
  cfg.beta = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(ssns::abeta_product(1.0, 0.4, cfg));
}
BENCHMARK(BM_AbetaProduct);

}  // namespace

BENCHMARK_MAIN();
