#include <benchmark/benchmark.h>

#include "dressgate/calibrate.hpp"
#include "dressgate/dressed.hpp"
#include "dressgate/montecarlo.hpp"
#include "dressgate/propagator.hpp"

using namespace dressgate;

namespace {

const PhysicsParams& ref() {
  static const PhysicsParams p = PhysicsParams::cesium_reference();
  return p;
}

const RampSchedule& calibrated() {
  static const RampSchedule s = calibrate_hold(RampShape{}.build(ref().omega_max), {}, ref()).schedule;
  return s;
}

void BM_KappaClosedForm(benchmark::State& state) {
  double d = -4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kappa_perfect_blockade({1.0, d}, StartSide::red));
    d += 1e-9;
  }
}
BENCHMARK(BM_KappaClosedForm);

void BM_KappaFiniteBlockade(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kappa_finite_blockade({1.0, -0.1}, 10.0, StartSide::red));
  }
}
BENCHMARK(BM_KappaFiniteBlockade);

void BM_PropagateLogical(benchmark::State& state) {
  PropagationSettings st;
  st.method = static_cast<PropagationMethod>(state.range(0));
  const DriveProgram program = DriveProgram::from_schedule(calibrated());
  for (auto _ : state) benchmark::DoNotOptimize(propagate_logical(program, ref(), st));
}
BENCHMARK(BM_PropagateLogical)
    ->Arg(static_cast<int>(PropagationMethod::adaptive_embedded_pair))
    ->Arg(static_cast<int>(PropagationMethod::piecewise_exponential))
    ->Unit(benchmark::kMillisecond);

void BM_RunProtocol(benchmark::State& state) {
  ProtocolPlan plan;
  plan.protocol = state.range(0) == 0 ? Protocol::ms : Protocol::cz;
  plan.physics = ref();
  plan.schedule = calibrated();
  plan.prepare();
  NoiseModel noise;
  noise.sigma_delta = noise.sigma_omega = 0.05 * ref().omega_max;
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto engine = realization_engine(1, 0, i++);
    benchmark::DoNotOptimize(run_protocol(plan, sample_realization(noise, engine)));
  }
}
BENCHMARK(BM_RunProtocol)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
