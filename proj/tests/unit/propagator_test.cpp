#include <gtest/gtest.h>

#include <cmath>

#include "dressgate/calibrate.hpp"
#include "dressgate/errors.hpp"
#include "dressgate/propagator.hpp"

using namespace dressgate;

namespace {

PhysicsParams unit_physics(double v_dd = 10.0, double gamma = 0.0) {
  PhysicsParams p;
  p.omega_max = 1.0;
  p.v_dd = v_dd;
  p.gamma_r = gamma;
  return p;
}

RampSchedule unit_ramp() { return RampShape{}.build(1.0); }

Complex amplitude(const TrajectoryResult& r, BasisState s) { return r.final_state(index_of(s)); }

}  // namespace

TEST(Propagate, UncoupledStateOnlyPicksUpPhase) {
  RampSchedule s = unit_ramp();
  s.omega_min = s.omega_max = 0.0;
  const TrajectoryResult r = propagate(s, {}, unit_physics(), BasisState::s11);
  EXPECT_NEAR(std::abs(amplitude(r, BasisState::s11)), 1.0, 1e-12);
  EXPECT_EQ(r.t_r, 0.0);
  EXPECT_EQ(r.t_rr, 0.0);
}

class RabiCycle : public ::testing::TestWithParam<PropagationMethod> {};

TEST_P(RabiCycle, ResonantDriveReturnsAfterOnePeriod) {
  const double omega = 1.0;
  const double period = kTwoPi / omega;
  DrivePair d;
  d.a = {omega, 0.0};
  PropagationSettings st;
  st.method = GetParam();
  const TrajectoryResult r =
      propagate(DriveProgram::constant(d, period), unit_physics(), BasisState::s10, st);
  // Full 2 pi rotation of the |10> <-> |r0> pair: amplitude -1.
  EXPECT_NEAR(std::abs(amplitude(r, BasisState::s10) + 1.0), 0.0, 1e-6);
  EXPECT_NEAR(r.t_r / (period / 2.0), 1.0, 1e-6);
  EXPECT_NEAR(r.final_norm, 1.0, 1e-8);
  EXPECT_EQ(r.t_rr, 0.0);
}

TEST_P(RabiCycle, PopulationSamplesFollowAnalyticSolution) {
  const double omega = 1.0;
  const double period = kTwoPi / omega;
  DrivePair d;
  d.a = {omega, 0.0};
  PropagationSettings st;
  st.method = GetParam();
  st.population_samples = 33;
  const TrajectoryResult r =
      propagate(DriveProgram::constant(d, period), unit_physics(), BasisState::s10, st);
  ASSERT_EQ(r.sample_times.size(), 33u);
  for (std::size_t k = 0; k < r.sample_times.size(); ++k) {
    const double t = r.sample_times[k];
    const double expected = std::pow(std::sin(omega * t / 2.0), 2);
    EXPECT_NEAR(r.populations_at(k)[index_of(BasisState::sr0)], expected, 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(Methods, RabiCycle,
                         ::testing::Values(PropagationMethod::adaptive_embedded_pair,
                                           PropagationMethod::piecewise_exponential));

TEST(Propagate, NormConservedWithoutDecay) {
  PropagationSettings st;
  for (BasisState s : kLogicalStates) {
    const TrajectoryResult r = propagate(unit_ramp(), {}, unit_physics(), s, st);
    EXPECT_LT(std::abs(r.final_norm - 1.0), 10.0 * st.rel_tol);
  }
}

TEST(Propagate, DecayMatchesIntegratedRydbergTime) {
  const PhysicsParams p = PhysicsParams::cesium_reference();
  const RampSchedule s = RampShape{}.build(p.omega_max);
  for (BasisState b : {BasisState::s01, BasisState::s11}) {
    const TrajectoryResult r = propagate(s, {}, p, b);
    const double lost = 1.0 - r.final_norm * r.final_norm;
    const double predicted = p.gamma_r * (r.t_r + 2.0 * r.t_rr);
    EXPECT_NEAR(lost / predicted, 1.0, 0.2);
  }
}

TEST(Propagate, SymmetricDriveNeverPopulatesDarkState) {
  const TrajectoryResult r = propagate(unit_ramp(), {}, unit_physics(), BasisState::s11);
  for (std::size_t k = 0; k < r.sample_states.size(); ++k) {
    const State9& psi = r.sample_states[k];
    const Complex dark = (psi(index_of(BasisState::s1r)) - psi(index_of(BasisState::sr1))) / std::sqrt(2.0);
    EXPECT_LT(std::norm(dark), 1e-16);
  }
}

TEST(Propagate, Deterministic) {
  DriveOffsets off;
  off.atoms[0].delta = 0.03;
  off.atoms[1].omega = -0.02;
  const TrajectoryResult a = propagate(unit_ramp(), off, unit_physics(10.0, 0.01), BasisState::s11);
  const TrajectoryResult b = propagate(unit_ramp(), off, unit_physics(10.0, 0.01), BasisState::s11);
  EXPECT_EQ(a.final_state, b.final_state);
  EXPECT_EQ(a.t_r, b.t_r);
  EXPECT_EQ(a.tracked_phase, b.tracked_phase);
  EXPECT_EQ(a.provenance, b.provenance);
}

TEST(Propagate, ToleranceRefinementChangesPhaseLittle) {
  PropagationSettings coarse;
  coarse.rel_tol = 1e-8;
  coarse.abs_tol = 1e-10;
  PropagationSettings fine;
  fine.rel_tol = 1e-10;
  fine.abs_tol = 1e-12;
  const TrajectoryResult a = propagate(unit_ramp(), {}, unit_physics(), BasisState::s11, coarse);
  const TrajectoryResult b = propagate(unit_ramp(), {}, unit_physics(), BasisState::s11, fine);
  EXPECT_LT(std::abs(a.tracked_phase - b.tracked_phase), 1e-6);
  EXPECT_LT(std::abs(a.t_r - b.t_r) / b.t_r, 1e-6);
}

TEST(Propagate, MethodsAgreeOnRamp) {
  PropagationSettings pe;
  pe.method = PropagationMethod::piecewise_exponential;
  const TrajectoryResult a = propagate(unit_ramp(), {}, unit_physics(), BasisState::s11);
  const TrajectoryResult b = propagate(unit_ramp(), {}, unit_physics(), BasisState::s11, pe);
  EXPECT_LT((a.final_state - b.final_state).norm(), 1e-4);
  EXPECT_NEAR(a.t_r / b.t_r, 1.0, 1e-4);
  EXPECT_LT(std::abs(a.tracked_phase - b.tracked_phase), 1e-4);
}

TEST(Propagate, TrackedPhaseIsUnwrapped) {
  // A long hold on |01> winds the phase well past 2 pi.
  const RampSchedule s = unit_ramp().with_hold(40.0);
  const TrajectoryResult r = propagate(s, {}, unit_physics(), BasisState::s01);
  EXPECT_GT(std::abs(r.tracked_phase), kTwoPi);
  EXPECT_NEAR(std::remainder(r.tracked_phase - std::arg(amplitude(r, BasisState::s01)), kTwoPi), 0.0, 1e-9);
}

TEST(Propagate, RejectsBadInput) {
  State9 psi = State9::Zero();
  psi(0) = 2.0;
  EXPECT_THROW(propagate(unit_ramp(), {}, unit_physics(), psi), ValidationError);
  PropagationSettings st;
  st.rel_tol = 0.0;
  EXPECT_THROW(propagate(unit_ramp(), {}, unit_physics(), BasisState::s11, st), ValidationError);
  st = {};
  st.rel_tol = 1e-2;
  EXPECT_THROW(st.validate(), ValidationError);
  st = {};
  st.population_samples = 1;
  EXPECT_THROW(st.validate(), ValidationError);
  EXPECT_THROW(DriveProgram::constant({}, 0.0), ValidationError);
}

TEST(Propagate, StateVectorInitialCondition) {
  State9 psi = State9::Zero();
  psi(index_of(BasisState::s01)) = 1.0 / std::sqrt(2.0);
  psi(index_of(BasisState::s10)) = 1.0 / std::sqrt(2.0);
  const TrajectoryResult r = propagate(unit_ramp(), {}, unit_physics(), psi);
  EXPECT_FALSE(r.initial_label.has_value());
  EXPECT_NEAR(r.final_norm, 1.0, 1e-8);
}

TEST(LogicalBlock, ZeroDriveIsIdentity) {
  RampSchedule s = unit_ramp();
  s.omega_min = s.omega_max = 0.0;
  const auto traj = propagate_logical(DriveProgram::from_schedule(s), unit_physics());
  const Matrix4c u = logical_block(traj);
  EXPECT_LT((u - Matrix4c::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LogicalBlock, ClockColumnIsExact) {
  DriveOffsets off;
  off.atoms[0].delta = 0.05;
  const auto traj = propagate_logical(DriveProgram::from_schedule(unit_ramp(), off), unit_physics(10.0, 0.01));
  const Matrix4c u = logical_block(traj);
  EXPECT_EQ(u(0, 0), Complex(1.0));
  for (int i = 1; i < 4; ++i) EXPECT_EQ(u(i, 0), Complex(0.0));
}

TEST(LogicalBlock, AdiabaticLimitIsDiagonalUnitary) {
  RampShape shape;
  shape.sweep_periods = 12.0;
  const RampSchedule s = shape.build(1.0);
  PropagationSettings st;
  st.rel_tol = 1e-10;
  st.abs_tol = 1e-12;
  const auto traj = propagate_logical(DriveProgram::from_schedule(s), unit_physics(100.0), st);
  const Matrix4c u = logical_block(traj);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(u(i, i)), 1.0, 1e-3);
    for (int j = 0; j < 4; ++j) {
      if (i != j) {
        EXPECT_LT(std::abs(u(i, j)), 1e-8);
      }
    }
  }
}

TEST(LogicalBlock, RejectsMismatchedRuns) {
  auto traj = propagate_logical(DriveProgram::from_schedule(unit_ramp()), unit_physics());
  auto swapped = traj;
  std::swap(swapped[1], swapped[2]);
  EXPECT_THROW(logical_block(swapped), ValidationError);
  DriveOffsets off;
  off.atoms[0].delta = 0.01;
  const auto other = propagate_logical(DriveProgram::from_schedule(unit_ramp(), off), unit_physics());
  auto mixed = traj;
  mixed[3] = other[3];
  EXPECT_THROW(logical_block(mixed), ValidationError);
}

TEST(Adiabaticity, StaticScheduleIsZero) {
  RampSchedule s = unit_ramp();
  s.omega_min = s.omega_max;
  s.delta_max = s.delta_min;
  EXPECT_LT(adiabaticity_metric(s, unit_physics()).metric, 1e-9);
}

TEST(Adiabaticity, FasterRampIsLessAdiabatic) {
  const RampSchedule s = unit_ramp();
  const double slow = adiabaticity_metric(s, unit_physics()).metric;
  const double fast = adiabaticity_metric(s.with_sweep(0.5 * s.sweep_duration()), unit_physics()).metric;
  EXPECT_GT(fast, slow);
}

TEST(Adiabaticity, DefaultRampIsBelowGuard) {
  const AdiabaticityReport rep = adiabaticity_metric(unit_ramp(), unit_physics());
  EXPECT_LT(rep.metric, 0.1);
  EXPECT_GT(rep.metric, 0.0);
  EXPECT_FALSE(rep.degenerate_gap);
  EXPECT_GT(rep.min_gap, 0.0);
}

TEST(Propagate, DoubleRydbergTimeOnCalibratedRamp) {
  const PhysicsParams p = PhysicsParams::cesium_reference();
  CalibrationSpec spec;
  const RampSchedule s = calibrate_hold(RampShape{}.build(p.omega_max), spec, p).schedule;
  const TrajectoryResult r = propagate(s, {}, p, BasisState::s11);
  const double period = kTwoPi / p.omega_max;
  EXPECT_GT(r.t_rr / period, 0.0029 / 2.0);
  EXPECT_LT(r.t_rr / period, 0.0029 * 2.0);
}

TEST(BrightDarkPropagation, NoRelativeMomentumNoDarkPopulation) {
  const PhysicsParams p = PhysicsParams::cesium_reference();
  const RampSchedule s = RampShape{}.build(p.omega_max);
  EXPECT_LT(propagate_bright_dark(s, p, 0.0, 0.0).max_dark, 1e-8);
}

TEST(BrightDarkPropagation, DarkPopulationGrowsWithRelativeMomentum) {
  const PhysicsParams p = PhysicsParams::cesium_reference();
  const RampSchedule s = RampShape{}.build(p.omega_max);
  double prev = 0.0;
  for (double x : {0.005, 0.01, 0.02, 0.04}) {
    const double p_rel = x * p.omega_max * p.mass / p.k_1r;
    const double dark = propagate_bright_dark(s, p, 0.0, p_rel).max_dark;
    EXPECT_GT(dark, prev);
    prev = dark;
  }
  EXPECT_LT(prev, 1e-2);
}
