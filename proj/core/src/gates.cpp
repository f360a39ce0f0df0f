#include "dressgate/gates.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dressgate/errors.hpp"

namespace dressgate {

namespace {

constexpr Complex kI{0.0, 1.0};

double wrap_angle(double x) { return std::remainder(x, kTwoPi); }

Eigen::Matrix2cd pauli(Axis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case Axis::x:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    // |1> is spin up, |0> spin down; sigma_y keeps the set right-handed.
    case Axis::y:
      m << 0.0, kI, -kI, 0.0;
      break;
    case Axis::z:
      m << -1.0, 0.0, 0.0, 1.0;
      break;
  }
  return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

// f(S) = V f(lambda) V^dagger with lambda in {-1, 0, 0, 1}.
template <typename F>
Matrix4c spectral(Axis axis, F f) {
  const Eigen::SelfAdjointEigenSolver<Matrix4c> es(collective_spin(axis));
  Vector4c d;
  for (int k = 0; k < 4; ++k) d(k) = f(std::round(es.eigenvalues()(k)));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

void check_diagonal(const Matrix4c& m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j && std::abs(m(i, j)) >= 0.1) {
        throw NumericalError("extract_angles: off-diagonal element (" + std::to_string(i) + "," +
                             std::to_string(j) + ") has magnitude " +
                             std::to_string(std::abs(m(i, j))));
      }
    }
  }
}

double circular_mean(double a, double b) {
  return std::atan2(std::sin(a) + std::sin(b), std::cos(a) + std::cos(b));
}

// Echo X_pi = -X (x) X swaps 00 <-> 11 and 01 <-> 10.
constexpr int echo_partner(int j) { return 3 - j; }

double column_norm2(const Matrix4c& m, int j) { return m.col(j).squaredNorm(); }

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

Matrix4c collective_spin(Axis axis) {
  const Eigen::Matrix2cd s = pauli(axis) / 2.0;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return kron(id, s) + kron(s, id);
}

Matrix4c collective_rotation(double theta, Axis axis) {
  return spectral(axis, [theta](double l) { return std::exp(-kI * theta * l); });
}

Matrix4c u_kappa(double theta1, double theta2, Axis axis) {
  return spectral(axis, [=](double l) { return std::exp(-kI * (theta1 * l + theta2 * l * l / 2.0)); });
}

double hs_fidelity(const Matrix4c& u, const Matrix4c& v) {
  return std::norm((u * v.adjoint()).trace()) / 16.0;
}

double analytic_fidelity(double d_theta1, double d_theta2) {
  const double c1 = std::cos(d_theta1);
  return 0.25 * (1.0 + c1 * c1 + 2.0 * c1 * std::cos(d_theta2 / 2.0));
}

AngleSet extract_angles(const Matrix4c& logical) {
  check_diagonal(logical);
  std::array<double, 4> arg{};
  for (int k = 0; k < 4; ++k) arg[k] = std::arg(logical(k, k));
  const double ref = arg[1] + wrap_angle(arg[2] - arg[1]) / 2.0;
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) p[k] = wrap_angle(arg[k] - ref);
  AngleSet out;
  out.theta2 = wrap_angle(p[1] + p[2] - p[0] - p[3]);
  out.theta1 = circular_mean(wrap_angle(p[0] + out.theta2 / 2.0), wrap_angle(-p[3] - out.theta2 / 2.0));
  out.axis = Axis::z;
  out.unwrapped = false;
  return out;
}

AngleSet extract_angles(const Matrix4c& logical, const std::array<double, 4>& tracked) {
  check_diagonal(logical);
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(tracked[k])) throw NumericalError("extract_angles: non-finite tracked phase");
  }
  AngleSet out;
  out.theta2 = tracked[1] + tracked[2] - tracked[0] - tracked[3];
  out.theta1 = (tracked[0] - tracked[3]) / 2.0;
  out.axis = Axis::z;
  out.unwrapped = true;
  return out;
}

double concurrence(const Vector4c& s) { return 2.0 * std::abs(s(0) * s(3) - s(1) * s(2)); }

RampBlock RampBlock::from_trajectories(std::span<const TrajectoryResult, 4> trajectories) {
  RampBlock b;
  b.logical = logical_block(trajectories);
  std::array<double, 4> phases{};
  for (std::size_t j = 0; j < 4; ++j) {
    const TrajectoryResult& r = trajectories[j];
    phases[j] = r.tracked_phase;
    b.t_r[j] = r.t_r;
    b.t_rr[j] = r.t_rr;
    b.final_norm2[j] = r.final_norm * r.final_norm;
  }
  b.tracked_phases = phases;
  b.provenance = trajectories[0].provenance;
  return b;
}

RampBlock RampBlock::from_unitary(const Matrix4c& u, std::uint64_t provenance) {
  RampBlock b;
  b.logical = u;
  for (int j = 0; j < 4; ++j) b.final_norm2[static_cast<std::size_t>(j)] = column_norm2(u, j);
  b.provenance = provenance;
  return b;
}

Matrix4c ms_target(double twist_sign) {
  const double s = twist_sign >= 0.0 ? 1.0 : -1.0;
  return collective_rotation(kPi, Axis::x) * u_kappa(0.0, s * kPi, Axis::z);
}

Matrix4c cz_target() {
  Matrix4c m = Matrix4c::Identity();
  m(3, 3) = -1.0;
  return m;
}

GateReport compose_ms(const RampBlock& first, const RampBlock& second, const MsOptions& options) {
  if (first.provenance != second.provenance) {
    throw ValidationError("compose_ms: ramp blocks come from differently configured runs");
  }
  const Matrix4c echo = collective_rotation(kPi, Axis::x);
  GateReport rep;
  rep.logical = second.logical * echo * first.logical;
  rep.target = ms_target(options.twist_sign);

  const Matrix4c diagonal_part = echo.adjoint() * rep.logical;
  if (first.tracked_phases && second.tracked_phases) {
    const AngleSet a = extract_angles(first.logical, *first.tracked_phases);
    const AngleSet b = extract_angles(second.logical, *second.tracked_phases);
    rep.angles.theta1 = a.theta1 - b.theta1;
    rep.angles.theta2 = a.theta2 + b.theta2;
    rep.angles.unwrapped = true;
    check_diagonal(diagonal_part);
  } else {
    rep.angles = extract_angles(diagonal_part);
  }
  rep.angles.axis = Axis::z;

  if (options.y_axis) {
    const Matrix4c r = collective_rotation(kPi / 2.0, Axis::x);
    rep.logical = r * rep.logical * r.adjoint();
    rep.target = r * rep.target * r.adjoint();
    rep.angles.axis = Axis::y;
  }
  rep.fidelity = std::clamp(hs_fidelity(rep.logical, rep.target), 0.0, 1.0);

  double total_loss = 0.0;
  double decay = 0.0;
  double t_rr = 0.0;
  for (int j = 0; j < 4; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const auto pj = static_cast<std::size_t>(echo_partner(j));
    rep.t_r_by_input[uj] = first.t_r[uj] + second.t_r[pj];
    t_rr += first.t_rr[uj] + second.t_rr[pj];
    total_loss += 1.0 - column_norm2(rep.logical, j);
    decay += 1.0 - first.final_norm2[uj] * second.final_norm2[pj];
  }
  total_loss /= 4.0;
  rep.norm_loss = std::clamp(decay / 4.0, 0.0, std::max(0.0, total_loss));
  rep.leakage = std::max(0.0, total_loss - rep.norm_loss);
  rep.t_rr = t_rr / 4.0;
  return rep;
}

GateReport compose_cz(const RampBlock& block, double fiducial_phi1) {
  Vector4c removal;
  removal << 1.0, std::exp(kI * fiducial_phi1), std::exp(kI * fiducial_phi1),
      std::exp(2.0 * kI * fiducial_phi1);
  GateReport rep;
  rep.logical = removal.asDiagonal() * block.logical;
  rep.target = cz_target();
  if (block.tracked_phases) {
    std::array<double, 4> phases = *block.tracked_phases;
    phases[1] += fiducial_phi1;
    phases[2] += fiducial_phi1;
    phases[3] += 2.0 * fiducial_phi1;
    rep.angles = extract_angles(rep.logical, phases);
  } else {
    rep.angles = extract_angles(rep.logical);
  }
  rep.fidelity = std::clamp(hs_fidelity(rep.logical, rep.target), 0.0, 1.0);

  double total_loss = 0.0;
  double decay = 0.0;
  double t_rr = 0.0;
  for (int j = 0; j < 4; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    rep.t_r_by_input[uj] = block.t_r[uj];
    t_rr += block.t_rr[uj];
    total_loss += 1.0 - column_norm2(rep.logical, j);
    decay += 1.0 - block.final_norm2[uj];
  }
  total_loss /= 4.0;
  rep.norm_loss = std::clamp(decay / 4.0, 0.0, std::max(0.0, total_loss));
  rep.leakage = std::max(0.0, total_loss - rep.norm_loss);
  rep.t_rr = t_rr / 4.0;
  return rep;
}

}  // namespace dressgate
