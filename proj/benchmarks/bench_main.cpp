#include <benchmark/benchmark.h>

#include "hencky/calibration.hpp"
#include "hencky/drivers.hpp"
#include "hencky/viscoelastic.hpp"

using namespace hencky;

namespace {

const EhmParams kParams = reference_params(Tdm::d500);
const ViscoParams kVisco{0.3, 1.5, 12.0, 0.2, 1.0};

void BM_LogSym(benchmark::State& state) {
  const SymTensor3 a(1.2, 0.9, 1.05, 0.1, -0.05, 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(log_sym(a));
}
BENCHMARK(BM_LogSym);

void BM_KirchhoffFromF(benchmark::State& state) {
  const DefGrad f(Tensor3({1.1, 0.3, 0.0, 0.05, 0.9, 0.1, 0.0, -0.02, 1.02}));
  for (auto _ : state) benchmark::DoNotOptimize(kirchhoff_ehm(log_right_stretch(f), kParams));
}
BENCHMARK(BM_KirchhoffFromF);

void BM_UniaxialSolve(benchmark::State& state) {
  const double l1 = -0.1 * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(uniaxial_solve(l1, kParams));
}
BENCHMARK(BM_UniaxialSolve)->Arg(1)->Arg(5)->Arg(12);

void BM_ViscoStep(benchmark::State& state) {
  const ViscoState st;
  const DefGrad f = DefGrad::simple_shear(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(update_state(st, f, 0.005, kParams, kVisco));
}
BENCHMARK(BM_ViscoStep);

void BM_SimulateCyclic(benchmark::State& state) {
  LoadProgram lp;
  lp.mode = state.range(0) == 0 ? LoadMode::shear : LoadMode::uniaxial;
  lp.amplitude = lp.mode == LoadMode::shear ? 1.0 : 0.2;
  lp.pre_strain = lp.mode == LoadMode::shear ? 0.0 : -0.1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_cyclic(lp, kParams, kVisco));
}
BENCHMARK(BM_SimulateCyclic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FitEquilibrium(benchmark::State& state) {
  const auto data = synth_equilibrium_campaign(kParams, {});
  EquilibriumFitOptions opts;
  opts.initial = initial_guess_from_moduli(initial_moduli_guess(Tdm::d500));
  for (auto _ : state) benchmark::DoNotOptimize(fit_equilibrium(data, opts));
}
BENCHMARK(BM_FitEquilibrium)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
