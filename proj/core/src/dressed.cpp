#include "dressgate/dressed.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dressgate/errors.hpp"

namespace dressgate {

namespace {

// Ground-connected eigenvalue of a 2x2 block [[0, g], [g, -Delta]] where g is
// the coupling. On the same side as the start (s * Delta >= 0) the shift is
// s * g^2 / (sqrt(g^2 + Delta^2/4) + |Delta|/2), which has no cancellation for
// weak dressing.
double two_level_shift(double coupling_sq4, double delta, double s) {
  // coupling_sq4 = 4 g^2, so sqrt(coupling_sq4 + Delta^2) = 2 sqrt(g^2 + Delta^2/4)
  const double root = std::sqrt(coupling_sq4 + delta * delta);
  if (s * delta >= 0.0) {
    return s * coupling_sq4 / (2.0 * (root + std::abs(delta)));
  }
  return 0.5 * (-delta + s * root);
}

constexpr double kHybridizedWeight = 0.25;

// The |11>-connected level keeps its rank in the bare ordering: lowest on the
// red branch, above the singly excited levels on the blue branch, and one
// higher when |rr> lies below |11>.
template <int N>
FiniteBlockadeKappa select_branch(const Eigen::Matrix<double, N, N>& block, double single_shifts,
                                  StartSide side) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> solver(block);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen solver failed on blockade block");
  int rank = side == StartSide::blue ? N - 2 : 0;
  if (block(N - 1, N - 1) < 0.0) ++rank;
  FiniteBlockadeKappa out;
  const auto v = solver.eigenvectors().col(rank);
  out.ground_energy = solver.eigenvalues()(rank);
  out.kappa = out.ground_energy - single_shifts;
  out.bare_overlap = v(0) * v(0);
  out.near_resonance = v(N - 1) * v(N - 1) >= kHybridizedWeight;
  return out;
}

}  // namespace

double light_shift_one(const AtomDrive& drive, StartSide side) {
  drive.validate();
  return two_level_shift(drive.omega * drive.omega, drive.delta, side_sign(side));
}

double light_shift_two(const AtomDrive& drive, StartSide side) {
  drive.validate();
  return two_level_shift(2.0 * drive.omega * drive.omega, drive.delta, side_sign(side));
}

double kappa_perfect_blockade(const AtomDrive& drive, StartSide side) {
  drive.validate();
  const double s = side_sign(side);
  const double om2 = drive.omega * drive.omega;
  const double d = drive.delta;
  const double a1 = std::sqrt(om2 + d * d);
  const double a2 = std::sqrt(2.0 * om2 + d * d);
  if (s * d >= 0.0) {
    // E2 - 2 E1 with both shifts in cancellation-free form collapses to this.
    const double ad = std::abs(d);
    const double denom = (a1 + a2) * (a1 + ad) * (a2 + ad);
    if (denom == 0.0) return 0.0;
    return -s * om2 * om2 / denom;
  }
  return 0.5 * d + 0.5 * s * (a2 - 2.0 * a1);
}

DressedAnalytics dressed_analytics(const AtomDrive& drive, StartSide side) {
  DressedAnalytics out;
  out.e_ls1 = light_shift_one(drive, side);
  out.e_ls2 = light_shift_two(drive, side);
  out.kappa = out.e_ls2 - 2.0 * out.e_ls1;
  out.theta1 = std::atan2(drive.omega, drive.delta);
  out.theta2 = std::atan2(std::sqrt(2.0) * drive.omega, drive.delta);
  return out;
}

FiniteBlockadeKappa kappa_finite_blockade(const AtomDrive& drive, double v_dd, StartSide side) {
  drive.validate();
  if (!(v_dd > 0.0) || !std::isfinite(v_dd)) throw ValidationError("v_dd must be finite and > 0");
  if (drive.omega == 0.0) return {};
  const double g = std::sqrt(2.0) * drive.omega / 2.0;
  Eigen::Matrix3d block;
  block << 0.0, g, 0.0,
           g, -drive.delta, g,
           0.0, g, v_dd - 2.0 * drive.delta;
  return select_branch<3>(block, 2.0 * light_shift_one(drive, side), side);
}

FiniteBlockadeKappa kappa_two_atom(const AtomDrive& drive_a, const AtomDrive& drive_b, double v_dd,
                                   StartSide side) {
  drive_a.validate();
  drive_b.validate();
  if (!(v_dd > 0.0) || !std::isfinite(v_dd)) throw ValidationError("v_dd must be finite and > 0");
  const double ga = drive_a.omega / 2.0;
  const double gb = drive_b.omega / 2.0;
  // {|11>, |1r>, |r1>, |rr>}
  Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
  block(1, 1) = -drive_b.delta;
  block(2, 2) = -drive_a.delta;
  block(3, 3) = v_dd - drive_a.delta - drive_b.delta;
  block(0, 1) = block(1, 0) = gb;
  block(0, 2) = block(2, 0) = ga;
  block(1, 3) = block(3, 1) = ga;
  block(2, 3) = block(3, 2) = gb;
  const double singles = light_shift_one(drive_a, side) + light_shift_one(drive_b, side);
  return select_branch<4>(block, singles, side);
}

void BDModelParams::validate() const {
  const double all[] = {omega_a, omega_b, delta, p_cm, p_rel, total_mass, mass};
  for (double v : all) {
    if (!std::isfinite(v)) throw ValidationError("BDModelParams: non-finite field");
  }
  if (!(total_mass > 0.0) || !(mass > 0.0)) throw ValidationError("BDModelParams: masses must be > 0");
  if (omega_a < 0.0 || omega_b < 0.0) throw ValidationError("BDModelParams: Rabi frequencies must be >= 0");
}

Matrix4d build_bd_hamiltonian(const BDModelParams& params, double v_dd, double k_1r) {
  params.validate();
  const double delta_eff = params.delta - k_1r * params.p_cm / params.total_mass;
  const double bd = k_1r * params.p_rel / params.mass;
  const double sym = (params.omega_a + params.omega_b) / (2.0 * std::sqrt(2.0));
  const double anti = (params.omega_a - params.omega_b) / (2.0 * std::sqrt(2.0));

  Matrix4d h = Matrix4d::Zero();
  h(kBDBright, kBDBright) = -delta_eff;
  h(kBDDark, kBDDark) = -delta_eff;
  h(kBDDouble, kBDDouble) = v_dd - 2.0 * delta_eff;
  h(kBDBright, kBDDark) = h(kBDDark, kBDBright) = bd;
  h(kBDBright, kBDGround) = h(kBDGround, kBDBright) = sym;
  h(kBDDouble, kBDBright) = h(kBDBright, kBDDouble) = sym;
  h(kBDDark, kBDGround) = h(kBDGround, kBDDark) = anti;
  h(kBDDouble, kBDDark) = h(kBDDark, kBDDouble) = anti;
  return h;
}

}  // namespace dressgate
