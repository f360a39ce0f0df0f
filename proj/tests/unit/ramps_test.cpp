#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "dressgate/dressed.hpp"
#include "dressgate/errors.hpp"
#include "dressgate/ramps.hpp"

using namespace dressgate;

namespace {

// Omega_max = 1, one Rabi period = 2 pi.
RampSchedule wide_ramp(double delta_max_ratio = 6.0) {
  RampShape shape;
  shape.delta_max_ratio = delta_max_ratio;
  shape.width_fraction = 0.25;
  return shape.build(1.0);
}

}  // namespace

TEST(Ramp, OmegaPeakAndPlateau) {
  const RampSchedule s = wide_ramp();
  EXPECT_DOUBLE_EQ(omega_at(s, s.t2), s.omega_max);
  EXPECT_DOUBLE_EQ(omega_at(s, 0.5 * (s.t2 + s.t3)), s.omega_max);
  EXPECT_DOUBLE_EQ(omega_at(s, s.t3), s.omega_max);
}

TEST(Ramp, OmegaAtStartOfEdge) {
  const RampSchedule s = wide_ramp();
  ASSERT_NEAR(s.t2 - s.t1, 4.0 * s.t_w, 1e-12);
  const double expected = s.omega_min + (s.omega_max - s.omega_min) * std::exp(-8.0);
  EXPECT_NEAR(omega_at(s, s.t1), expected, 1e-15);
  EXPECT_NEAR(omega_at(s, s.t4), expected, 1e-15);
}

TEST(Ramp, DetuningEndpointsAndLinearity) {
  for (StartSide side : {StartSide::blue, StartSide::red}) {
    RampShape shape;
    shape.start_side = side;
    const RampSchedule s = shape.build(1.0);
    const double sg = side_sign(side);
    EXPECT_DOUBLE_EQ(delta_at(s, s.t1), sg * s.delta_max);
    EXPECT_DOUBLE_EQ(delta_at(s, s.t2), sg * s.delta_min);
    EXPECT_NEAR(delta_at(s, 0.5 * (s.t1 + s.t2)), sg * 0.5 * (s.delta_max + s.delta_min), 1e-12);
    EXPECT_NEAR(delta_at(s, s.t4), sg * s.delta_max, 1e-12);
  }
}

TEST(Ramp, QueriesOutsideWindowThrow) {
  const RampSchedule s = wide_ramp();
  EXPECT_THROW(omega_at(s, s.t1 - 1e-3), std::out_of_range);
  EXPECT_THROW(delta_at(s, s.t4 + 1e-3), std::out_of_range);
}

TEST(Ramp, MirrorSymmetry) {
  const RampSchedule s = wide_ramp();
  for (int i = 0; i <= 1000; ++i) {
    const double t = s.t1 + s.duration() * i / 1000.0;
    const double tm = s.t1 + s.t4 - t;
    EXPECT_NEAR(omega_at(s, t), omega_at(s, tm), 1e-12 * s.omega_max);
    EXPECT_NEAR(delta_at(s, t), delta_at(s, tm), 1e-12 * s.delta_max);
  }
}

TEST(Ramp, DetuningMagnitudeIsMonotone) {
  const RampSchedule s = wide_ramp();
  double prev = INFINITY;
  for (int i = 0; i <= 500; ++i) {
    const double t = s.t1 + (s.t2 - s.t1) * i / 500.0;
    const double m = std::abs(delta_at(s, t));
    EXPECT_LE(m, prev);
    prev = m;
  }
  prev = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double t = s.t3 + (s.t4 - s.t3) * i / 500.0;
    const double m = std::abs(delta_at(s, t));
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(KappaProfile, PeakStartAndSymmetry) {
  const RampSchedule s = wide_ramp(6.0);
  const auto prof = kappa_profile(s, 2001);
  ASSERT_EQ(prof.size(), 2001u);
  double peak = 0.0;
  for (const auto& k : prof) peak = std::max(peak, std::abs(k.kappa));
  EXPECT_NEAR(peak / s.omega_max, 0.246, 1e-3);
  EXPECT_NEAR(prof.front().kappa / s.omega_max, 0.0, 1e-8);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    EXPECT_NEAR(prof[i].kappa, prof[prof.size() - 1 - i].kappa, 1e-12);
  }
  EXPECT_THROW(kappa_profile(s, 1), ValidationError);
}

TEST(PredictedTheta2, ZeroDriveGivesZero) {
  RampSchedule s = wide_ramp();
  s.omega_min = 0.0;
  s.omega_max = 0.0;
  EXPECT_EQ(predicted_theta2(s), 0.0);
}

TEST(PredictedTheta2, HoldAdditivity) {
  const RampSchedule s = wide_ramp();
  const double kappa_hold = kappa_perfect_blockade({s.omega_max, -s.delta_min}, StartSide::red);
  const double h = s.hold_duration();
  const double a = predicted_theta2(s);
  const double b = predicted_theta2(s.with_hold(2.0 * h));
  EXPECT_NEAR(b - a, kappa_hold * h, 2e-6);
}

TEST(PredictedTheta2, StrictlyIncreasingInHold) {
  const RampSchedule s = wide_ramp();
  double prev = -INFINITY;
  for (double h = 0.0; h < 10.0; h += 0.5) {
    const double v = predicted_theta2(s.with_hold(h));
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(PredictedTheta2, SingleAtomPhaseIsLightShiftIntegral) {
  // Static schedule: Omega and Delta constant, integral is E_LS1 * duration.
  RampSchedule s = wide_ramp();
  s.omega_min = s.omega_max;
  s.delta_max = s.delta_min;
  const double e1 = light_shift_one({s.omega_max, -s.delta_min}, StartSide::red);
  EXPECT_NEAR(predicted_single_atom_phase(s), e1 * s.duration(), 1e-9);
  const double k = kappa_perfect_blockade({s.omega_max, -s.delta_min}, StartSide::red);
  EXPECT_NEAR(predicted_theta2(s), k * s.duration(), 1e-9);
}

TEST(Schedule, ValidationErrors) {
  RampSchedule s = wide_ramp();
  RampSchedule bad = s;
  bad.t2 = bad.t1;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = s;
  bad.t4 += 0.1;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = s;
  bad.delta_min = 0.0;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = s;
  bad.omega_min = 2.0 * bad.omega_max;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = s;
  bad.t_w = NAN;
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_THROW(s.with_hold(-1.0), ValidationError);
}

TEST(Schedule, HoldAndSweepAdjustments) {
  const RampSchedule s = wide_ramp();
  const RampSchedule h = s.with_hold(3.0);
  EXPECT_DOUBLE_EQ(h.t2, s.t2);
  EXPECT_NEAR(h.hold_duration(), 3.0, 1e-12);
  EXPECT_NEAR(h.t4 - h.t3, s.t2 - s.t1, 1e-12);
  const RampSchedule w = s.with_sweep(2.0 * s.sweep_duration());
  EXPECT_NEAR(w.t_w / w.sweep_duration(), s.t_w / s.sweep_duration(), 1e-12);
  EXPECT_NEAR(w.hold_duration(), s.hold_duration(), 1e-12);
  EXPECT_NO_THROW(w.validate());
}

TEST(Schedule, ShapeDefaults) {
  const RampSchedule s = RampShape{}.build(2.0);
  const double period = kTwoPi / 2.0;
  EXPECT_NEAR(s.sweep_duration() / period, 4.0, 1e-12);
  EXPECT_NEAR(s.delta_max, 8.0, 1e-12);
  EXPECT_NEAR(s.delta_min, 0.2, 1e-12);
  EXPECT_NEAR(s.omega_min, 2.0e-3, 1e-15);
  EXPECT_EQ(s.start_side, StartSide::red);
  EXPECT_THROW(RampShape{}.build(0.0), ValidationError);
}
