#include <cmath>
#include <span>

#include <benchmark/benchmark.h>

#include "pdce/dynamics.hpp"
#include "pdce/fock.hpp"
#include "pdce/ode.hpp"
#include "pdce/verify.hpp"

using namespace pdce;

static void BM_Rk45Oscillator(benchmark::State& state) {
  ode::IvpProblem p;
  p.dimension = 2;
  p.rhs = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  p.t1 = 100.0;
  p.y0 = {1.0, 0.0};
  for (int k = 0; k <= 1000; ++k) p.output_times.push_back(0.1 * k);
  for (auto _ : state) benchmark::DoNotOptimize(ode::integrate(p));
}
BENCHMARK(BM_Rk45Oscillator)->Unit(benchmark::kMillisecond);

static void BM_EvolveFig1(benchmark::State& state) {
  const Regime g = regimes::fig1();
  EvolveOptions o;
  o.phi0 = initial_squeeze_phase(g.drive, g.source.chi, 0.0);
  const GridSpec grid{static_cast<double>(state.range(0)), 200};
  for (auto _ : state) benchmark::DoNotOptimize(evolve(g.drive, g.source, grid, o));
}
BENCHMARK(BM_EvolveFig1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_EvolveIntegratedRoute(benchmark::State& state) {
  const Regime g = regimes::regular_integrated();
  for (auto _ : state) benchmark::DoNotOptimize(evolve(g.drive, g.source, {50.0, 200}));
}
BENCHMARK(BM_EvolveIntegratedRoute)->Unit(benchmark::kMillisecond);

static void BM_MatrixExponential(benchmark::State& state) {
  const FockSpace f(static_cast<int>(state.range(0)));
  const Matrix g = 0.4 * (f.number() + 0.5 * Matrix::Identity(f.dim(), f.dim())) + 0.1 * f.a() * f.a() +
                   0.1 * f.adag() * f.adag();
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(g));
}
BENCHMARK(BM_MatrixExponential)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_FockPropagation(benchmark::State& state) {
  const Regime g = regimes::hermitian();
  const CoefficientModel model(g.drive, g.source);
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(0.1 * k);
  const auto psi0 = TruncatedState::vacuum(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(model, psi0, times));
}
BENCHMARK(BM_FockPropagation)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
