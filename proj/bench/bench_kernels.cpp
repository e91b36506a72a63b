//! \file bench_kernels.cpp
//  \brief serial vs OpenMP timings of the hot kernels: the prolongation
//         sweep, the 2D advection step and one model-system RK stage.

#include <benchmark/benchmark.h>

#include "curlmesh/gpr.hpp"
#include "curlmesh/parallel.hpp"
#include "curlmesh/prolong.hpp"
#include "curlmesh/scheme.hpp"

using namespace curlmesh;

namespace {

void bm_prolong(benchmark::State& state) {
  set_max_threads(int(state.range(0)));
  const auto coarse = prolong::init_gradient_field(24);
  for (auto _ : state) {
    auto fine = prolong::prolong_field(coarse, 3, prolong::ProlongMode::TouchUp);
    benchmark::DoNotOptimize(fine.x.data());
  }
  set_max_threads(0);
}

void bm_scheme_step(benchmark::State& state) {
  set_max_threads(int(state.range(0)));
  scheme::AdvectionConfig cfg;
  cfg.vx = 1.0;
  cfg.vy = 0.7;
  scheme::EdgeState2D s(512, 512);
  for (int j = 0; j < 512; ++j)
    for (int i = 0; i < 512; ++i) {
      s.x(i, j) = std::sin(0.1 * i) * std::cos(0.07 * j);
      s.y(i, j) = std::cos(0.05 * i + 0.2 * j);
    }
  const double dt = cfg.dt_bound();
  for (auto _ : state) {
    scheme::step2d(s, cfg, dt);
    benchmark::DoNotOptimize(s.jx.data());
  }
  set_max_threads(0);
}

void bm_gpr_step(benchmark::State& state) {
  set_max_threads(int(state.range(0)));
  gpr::Solver sv;
  sv.order = 3;
  sv.profile = gpr::stationary_profile(sv.par, 8.0, 20000);
  auto s = sv.init_vortex(128);
  const double dt = sv.pick_dt(s);
  for (auto _ : state) {
    sv.step(s, dt);
    benchmark::DoNotOptimize(s.rho.data());
  }
  set_max_threads(0);
}

}  // namespace

BENCHMARK(bm_prolong)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_scheme_step)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gpr_step)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
