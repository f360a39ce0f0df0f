#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "dressgate/propagator.hpp"
#include "dressgate/types.hpp"

namespace dressgate {

enum class Axis { x, y, z };

std::string_view to_string(Axis axis);

struct AngleSet {
  double theta1 = 0.0;
  double theta2 = 0.0;
  Axis axis = Axis::z;
  // false when the angles come from a single final matrix and are therefore
  // only known modulo 2 pi (theta2) or pi (theta1).
  bool unwrapped = false;
};

// Collective spin S_mu = 1 (x) sigma_mu / 2 + sigma_mu / 2 (x) 1 on the logical
// order {00, 01, 10, 11}; S_z = diag(-1, 0, 0, 1).
Matrix4c collective_spin(Axis axis);

// exp(-i theta S_axis)
Matrix4c collective_rotation(double theta, Axis axis);

// exp(-i theta1 S_mu - i theta2 S_mu^2 / 2), via the spectrum of S_mu.
Matrix4c u_kappa(double theta1, double theta2, Axis axis);

// |tr(U V^dagger)|^2 / 16
double hs_fidelity(const Matrix4c& u, const Matrix4c& v);

// (1 + cos^2 d1 + 2 cos d1 cos(d2 / 2)) / 4
double analytic_fidelity(double d_theta1, double d_theta2);

// Angles of a z-diagonal block. Without tracked phases the result is wrapped;
// with them (unwrapped arg <jk|psi> per logical input) theta2 keeps its branch.
// Throws NumericalError if any off-diagonal magnitude reaches 0.1.
AngleSet extract_angles(const Matrix4c& logical);
AngleSet extract_angles(const Matrix4c& logical, const std::array<double, 4>& tracked_phases);

// Concurrence 2|ad - bc| of a normalized two-qubit pure state.
double concurrence(const Vector4c& state);

// One propagated ramp restricted to the logical subspace.
struct RampBlock {
  Matrix4c logical = Matrix4c::Identity();
  std::optional<std::array<double, 4>> tracked_phases;
  std::array<double, 4> t_r{};
  std::array<double, 4> t_rr{};
  // Squared norm of each full 9-dim final state.
  std::array<double, 4> final_norm2{1.0, 1.0, 1.0, 1.0};
  std::uint64_t provenance = 0;

  static RampBlock from_trajectories(std::span<const TrajectoryResult, 4> trajectories);
  // Ideal block with no simulation metadata, e.g. u_kappa output.
  static RampBlock from_unitary(const Matrix4c& u, std::uint64_t provenance = 0);
};

struct GateReport {
  Matrix4c logical = Matrix4c::Identity();
  Matrix4c target = Matrix4c::Identity();
  AngleSet angles;
  double fidelity = 0.0;
  std::array<double, 4> t_r_by_input{};  // logical order, seconds
  double t_rr = 0.0;                     // mean over inputs, seconds
  double leakage = 0.0;
  double norm_loss = 0.0;
};

// exp(-i pi S_x) exp(-i sign pi S_z^2 / 2); sign = +1 for kappa > 0 ramps.
Matrix4c ms_target(double twist_sign = 1.0);
// diag(1, 1, 1, -1)
Matrix4c cz_target();

struct MsOptions {
  double twist_sign = 1.0;
  // Conjugate the result and target by exp(-i pi/2 S_x), turning the
  // z-twist into a y-twist.
  bool y_axis = false;
};

// U = B2 exp(-i pi S_x) B1. The angles reported are those of
// exp(+i pi S_x) U, which is diagonal for z-diagonal blocks.
// Throws ValidationError if the blocks come from different runs.
GateReport compose_ms(const RampBlock& first, const RampBlock& second, const MsOptions& options = {});

// U = diag(1, e^{i phi}, e^{i phi}, e^{2 i phi}) B, scored against diag(1,1,1,-1).
GateReport compose_cz(const RampBlock& block, double fiducial_phi1);

}  // namespace dressgate
