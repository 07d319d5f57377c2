#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "axb/dsh.hpp"
#include "axb/group.hpp"
#include "axb/quadrature.hpp"
#include "axb/resolvent.hpp"
#include "axb/spectral.hpp"

namespace {

void BM_DshApplyExp(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const axb::Cx mu(0.0, 12.0);
  double v = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(axb::dsh_apply_exp(l, mu, v));
    v = (v > 20.0) ? 0.5 : v + 1e-3;
  }
}
BENCHMARK(BM_DshApplyExp)->Arg(1)->Arg(2)->Arg(4);

void BM_FR(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(axb::F_R(2, 1, 1.0, s));
  }
}
BENCHMARK(BM_FR)->Arg(1)->Arg(16)->Arg(256);

void BM_ResolventProfile(benchmark::State& state) {
  axb::ResolventParams p(static_cast<int>(state.range(0)), axb::Cx(-1.0, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(axb::f0_profile(p, 1.3));
  }
}
BENCHMARK(BM_ResolventProfile)->Arg(1)->Arg(2)->Arg(3);

void BM_WavePlanBuild(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  auto psi = axb::MultiplierProfile::bump_band();
  for (auto _ : state) {
    axb::WavePlan plan(2, 1, psi, lambda, 2.0);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_WavePlanBuild)->Arg(4)->Arg(16)->Arg(64);

void BM_WavePlanEval(benchmark::State& state) {
  auto psi = axb::MultiplierProfile::bump_band();
  axb::WavePlan plan(2, 1, psi, static_cast<double>(state.range(0)), 2.0);
  double rho = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan.G(rho));
    rho = (rho > 1.0) ? -1.0 : rho + 1e-3;
  }
}
BENCHMARK(BM_WavePlanEval)->Arg(4)->Arg(64);

void BM_RadialDensity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double R = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(axb::radial_density(n, R));
    R = (R > 10.0) ? 0.1 : R + 0.05;
  }
}
BENCHMARK(BM_RadialDensity)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
