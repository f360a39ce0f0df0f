#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "dressgate/errors.hpp"
#include "dressgate/gates.hpp"

using namespace dressgate;

namespace {

constexpr Complex kI{0.0, 1.0};

double max_diff(const Matrix4c& a, const Matrix4c& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Gate equality up to a global phase.
double phase_free_distance(const Matrix4c& a, const Matrix4c& b) {
  const Complex t = (b.adjoint() * a).trace();
  const Complex phase = std::abs(t) > 0.0 ? t / std::abs(t) : Complex(1.0);
  return max_diff(a, phase * b);
}

Matrix4c expm(const Matrix4c& generator) {
  const Eigen::MatrixXcd g = generator;
  const Eigen::MatrixXcd e = g.exp();
  return e;
}

Matrix4c diag(Complex a, Complex b, Complex c, Complex d) {
  Vector4c v;
  v << a, b, c, d;
  return v.asDiagonal();
}

}  // namespace

TEST(CollectiveSpin, ZIsDiagonalInLogicalOrder) {
  const Matrix4c sz = collective_spin(Axis::z);
  EXPECT_LT(max_diff(sz, diag(-1.0, 0.0, 0.0, 1.0)), 1e-15);
}

TEST(CollectiveSpin, CommutationRelations) {
  const Matrix4c x = collective_spin(Axis::x);
  const Matrix4c y = collective_spin(Axis::y);
  const Matrix4c z = collective_spin(Axis::z);
  EXPECT_LT(max_diff(x * y - y * x, kI * z), 1e-14);
  EXPECT_LT(max_diff(y * z - z * y, kI * x), 1e-14);
  EXPECT_LT(max_diff(z * x - x * z, kI * y), 1e-14);
}

TEST(CollectiveRotation, MatchesMatrixExponential) {
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    for (double theta : {-2.3, 0.0, 0.4, kPi, 5.1}) {
      const Matrix4c expected = expm(-kI * theta * collective_spin(axis));
      EXPECT_LT(max_diff(collective_rotation(theta, axis), expected), 1e-12) << to_string(axis) << theta;
    }
  }
}

TEST(CollectiveRotation, PiAboutXSwapsMirrorInputs) {
  const Matrix4c x = collective_rotation(kPi, Axis::x);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(std::abs(x(3 - j, j)), 1.0, 1e-14);
  }
}

TEST(UKappa, MatchesMatrixExponential) {
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    const Matrix4c s = collective_spin(axis);
    for (double t1 : {-0.7, 0.0, 1.3}) {
      for (double t2 : {-kPi, 0.25, kPi / 2.0, 4.0}) {
        const Matrix4c expected = expm(-kI * (t1 * s + t2 * s * s / 2.0));
        EXPECT_LT(max_diff(u_kappa(t1, t2, axis), expected), 1e-12);
      }
    }
  }
}

TEST(UKappa, IsUnitary) {
  const Matrix4c u = u_kappa(0.3, 1.1, Axis::y);
  EXPECT_LT(max_diff(u * u.adjoint(), Matrix4c::Identity()), 1e-14);
}

TEST(UKappa, ControlledPhaseSpecialCases) {
  EXPECT_LT(phase_free_distance(u_kappa(kPi / 2.0, kPi, Axis::z), cz_target()), 1e-14);
  EXPECT_LT(phase_free_distance(u_kappa(-kPi / 2.0, kPi, Axis::z), diag(-1.0, 1.0, 1.0, 1.0)), 1e-14);
}

TEST(Targets, MsTargetMaximallyEntanglesPlusPlus) {
  const Vector4c plus = Vector4c::Constant(0.5);
  for (double sign : {1.0, -1.0}) {
    EXPECT_NEAR(concurrence(ms_target(sign) * plus), 1.0, 1e-12);
  }
}

TEST(Targets, CzMaximallyEntanglesPlusPlus) {
  const Vector4c plus = Vector4c::Constant(0.5);
  EXPECT_NEAR(concurrence(cz_target() * plus), 1.0, 1e-14);
  EXPECT_NEAR(concurrence(plus), 0.0, 1e-14);
}

TEST(Fidelity, AnalyticFormulaMatchesTraceOverlap) {
  for (double d1 = -1.5; d1 <= 1.5; d1 += 0.25) {
    for (double d2 = -3.0; d2 <= 3.0; d2 += 0.5) {
      const double f = hs_fidelity(u_kappa(0.2 + d1, 1.0 + d2, Axis::z), u_kappa(0.2, 1.0, Axis::z));
      EXPECT_NEAR(f, analytic_fidelity(d1, d2), 1e-12) << d1 << " " << d2;
    }
  }
}

TEST(Fidelity, PhaseInvariantAndBounded) {
  const Matrix4c u = u_kappa(0.4, 0.9, Axis::x);
  EXPECT_NEAR(hs_fidelity(u, u), 1.0, 1e-14);
  EXPECT_NEAR(hs_fidelity(std::exp(kI * 0.7) * u, u), 1.0, 1e-14);
  EXPECT_LE(hs_fidelity(u, cz_target()), 1.0);
  EXPECT_NEAR(analytic_fidelity(0.0, 0.0), 1.0, 1e-15);
}

TEST(Fidelity, TwistErrorCostsLessThanRotationError) {
  EXPECT_GT(analytic_fidelity(0.0, 0.1), analytic_fidelity(0.1, 0.0));
}

TEST(Extract, RoundTripWrapped) {
  for (double t1 : {-1.2, 0.0, 0.5, 1.4}) {
    for (double t2 : {-2.5, -0.3, 0.0, 1.0, 3.0}) {
      const Matrix4c u = std::exp(kI * 0.37) * u_kappa(t1, t2, Axis::z);
      const AngleSet a = extract_angles(u);
      EXPECT_FALSE(a.unwrapped);
      EXPECT_NEAR(std::remainder(a.theta2 - t2, kTwoPi), 0.0, 1e-12);
      EXPECT_NEAR(std::remainder(a.theta1 - t1, kPi), 0.0, 1e-12);
      EXPECT_NEAR(hs_fidelity(u_kappa(a.theta1, a.theta2, Axis::z), u), 1.0, 1e-12);
    }
  }
}

TEST(Extract, TrackedPhasesKeepBranch) {
  const double t1 = 0.3;
  const double t2 = 7.5;
  // arg of the diagonal of u_kappa(t1, t2): -(t1 l + t2 l^2 / 2).
  const std::array<double, 4> tracked = {t1 - t2 / 2.0, 0.0, 0.0, -t1 - t2 / 2.0};
  const AngleSet a = extract_angles(u_kappa(t1, t2, Axis::z), tracked);
  EXPECT_TRUE(a.unwrapped);
  EXPECT_NEAR(a.theta2, t2, 1e-14);
  EXPECT_NEAR(a.theta1, t1, 1e-14);
}

TEST(Extract, RejectsNonDiagonalBlocks) {
  EXPECT_THROW(extract_angles(collective_rotation(0.5, Axis::x)), NumericalError);
  EXPECT_NO_THROW(extract_angles(collective_rotation(0.01, Axis::x)));
}

TEST(ComposeMs, IdealBlocksGiveTarget) {
  const RampBlock b = RampBlock::from_unitary(u_kappa(0.0, kPi / 2.0, Axis::z));
  const GateReport r = compose_ms(b, b);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-13);
  EXPECT_NEAR(std::abs(r.angles.theta2), kPi, 1e-12);
  EXPECT_NEAR(r.leakage, 0.0, 1e-14);
}

TEST(ComposeMs, EchoCancelsSingleQubitRotation) {
  const RampBlock b = RampBlock::from_unitary(u_kappa(0.8, kPi / 2.0, Axis::z));
  EXPECT_NEAR(compose_ms(b, b).fidelity, 1.0, 1e-13);
}

TEST(ComposeMs, TwistErrorDoubles) {
  for (double d : {-0.1, -0.03, 0.05}) {
    const RampBlock b = RampBlock::from_unitary(u_kappa(0.0, kPi / 2.0 + d, Axis::z));
    const GateReport r = compose_ms(b, b);
    EXPECT_NEAR(r.fidelity, analytic_fidelity(0.0, 2.0 * d), 1e-12);
  }
}

TEST(ComposeMs, NegativeTwistMatchesNegativeTarget) {
  const RampBlock b = RampBlock::from_unitary(u_kappa(0.0, -kPi / 2.0, Axis::z));
  MsOptions opt;
  opt.twist_sign = -1.0;
  EXPECT_NEAR(compose_ms(b, b, opt).fidelity, 1.0, 1e-13);
}

TEST(ComposeMs, YAxisVariant) {
  const RampBlock b = RampBlock::from_unitary(u_kappa(0.0, kPi / 2.0 + 0.02, Axis::z));
  MsOptions opt;
  opt.y_axis = true;
  const GateReport y = compose_ms(b, b, opt);
  EXPECT_EQ(y.angles.axis, Axis::y);
  EXPECT_NEAR(y.fidelity, compose_ms(b, b).fidelity, 1e-13);
  // The y-variant target is built from a y twist.
  const Matrix4c expected = collective_rotation(kPi, Axis::x) * u_kappa(0.0, kPi, Axis::y);
  EXPECT_LT(phase_free_distance(y.target, expected), 1e-12);
}

TEST(ComposeMs, TrackedAnglesCombine) {
  RampBlock b = RampBlock::from_unitary(u_kappa(0.2, 1.6, Axis::z));
  b.tracked_phases = std::array<double, 4>{0.2 - 0.8, 0.0, 0.0, -0.2 - 0.8};
  const GateReport r = compose_ms(b, b);
  EXPECT_TRUE(r.angles.unwrapped);
  EXPECT_NEAR(r.angles.theta2, 3.2, 1e-13);
  EXPECT_NEAR(r.angles.theta1, 0.0, 1e-13);
}

TEST(ComposeMs, RejectsMixedProvenance) {
  const RampBlock a = RampBlock::from_unitary(Matrix4c::Identity(), 1);
  const RampBlock b = RampBlock::from_unitary(Matrix4c::Identity(), 2);
  EXPECT_THROW(compose_ms(a, b), ValidationError);
}

TEST(ComposeMs, NormLossAccounting) {
  const RampBlock b = RampBlock::from_unitary(0.9 * u_kappa(0.0, kPi / 2.0, Axis::z));
  const GateReport r = compose_ms(b, b);
  EXPECT_NEAR(r.norm_loss, 1.0 - std::pow(0.81, 2), 1e-12);
  EXPECT_NEAR(r.leakage, 0.0, 1e-12);
}

TEST(ComposeMs, RydbergTimeFollowsEchoPartner) {
  RampBlock b = RampBlock::from_unitary(u_kappa(0.0, kPi / 2.0, Axis::z));
  b.t_r = {0.0, 1.0, 2.0, 3.0};
  const GateReport r = compose_ms(b, b);
  for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(r.t_r_by_input[static_cast<std::size_t>(j)], 3.0);
}

TEST(ComposeCz, IdealBlockWithFiducial) {
  for (double t1 : {-0.6, 0.0, 1.1}) {
    const RampBlock b = RampBlock::from_unitary(u_kappa(t1, kPi, Axis::z));
    const GateReport r = compose_cz(b, t1 - kPi / 2.0);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-13);
    const Vector4c plus = Vector4c::Constant(0.5);
    EXPECT_NEAR(concurrence(r.logical * plus), 1.0, 1e-12);
  }
}

TEST(ComposeCz, FiducialErrorActsAsRotationError) {
  const double t1 = 0.4;
  const RampBlock b = RampBlock::from_unitary(u_kappa(t1, kPi, Axis::z));
  for (double eps : {-0.2, 0.05, 0.3}) {
    EXPECT_NEAR(compose_cz(b, t1 - kPi / 2.0 + eps).fidelity, analytic_fidelity(eps, 0.0), 1e-12);
  }
}

TEST(ComposeCz, TwistErrorIsNotEchoed) {
  const RampBlock b = RampBlock::from_unitary(u_kappa(0.0, kPi + 0.1, Axis::z));
  // Leftover diag(1, 1, 1, e^{-0.1 i}) is u_kappa(0.05, 0.1) up to phase.
  EXPECT_NEAR(compose_cz(b, -kPi / 2.0 - 0.05).fidelity, analytic_fidelity(0.05, 0.1), 1e-12);
}

TEST(ComposeCz, LeakageSeparatedFromDecay) {
  Matrix4c u = u_kappa(0.0, kPi, Axis::z);
  u(3, 3) *= std::sqrt(0.9);
  RampBlock b = RampBlock::from_unitary(u);
  b.final_norm2 = {1.0, 1.0, 1.0, 0.96};  // 0.04 decayed, 0.06 left the block
  const GateReport r = compose_cz(b, -kPi / 2.0);
  EXPECT_NEAR(r.norm_loss, 0.01, 1e-12);
  EXPECT_NEAR(r.leakage, 0.015, 1e-12);
}
