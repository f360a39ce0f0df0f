#include "dressgate/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dressgate/dressed.hpp"
#include "dressgate/errors.hpp"
#include "dressgate/gates.hpp"

namespace dressgate {

namespace {

constexpr int kMaxSweepExtensions = 8;
constexpr double kSweepGrowth = 1.25;

double simulated_theta2(const RampSchedule& s, const PhysicsParams& physics,
                        const PropagationSettings& settings) {
  const auto traj = propagate_logical(DriveProgram::from_schedule(s), physics, settings);
  const RampBlock block = RampBlock::from_trajectories(traj);
  return extract_angles(block.logical, *block.tracked_phases).theta2;
}

}  // namespace

void CalibrationSpec::validate() const {
  if (!(target_theta2 >= 0.0 && target_theta2 < kTwoPi)) {
    throw ValidationError("CalibrationSpec: target_theta2 must lie in [0, 2 pi)");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw ValidationError("CalibrationSpec: tolerance must be > 0");
  }
  if (!(adiabaticity_guard > 0.0)) throw ValidationError("CalibrationSpec: guard must be > 0");
  if (max_iterations < 1) throw ValidationError("CalibrationSpec: max_iterations must be >= 1");
}

CalibrationResult calibrate_hold(const RampSchedule& templ, const CalibrationSpec& spec,
                                 const PhysicsParams& physics, const PropagationSettings& settings) {
  templ.validate();
  spec.validate();
  physics.validate();

  const AtomDrive plateau{templ.omega_max, side_sign(templ.start_side) * templ.delta_min};
  const double kappa_hold = kappa_perfect_blockade(plateau, templ.start_side);
  if (kappa_hold == 0.0 || !std::isfinite(kappa_hold)) {
    throw ValidationError("calibrate_hold: kappa vanishes on the hold plateau");
  }
  const double sign = kappa_hold > 0.0 ? 1.0 : -1.0;
  const double target = sign * spec.target_theta2;

  CalibrationResult result;
  result.report.target = target;
  RampSchedule s = templ;

  result.report.adiabaticity_metric = adiabaticity_metric(s, physics).metric;
  while (result.report.adiabaticity_metric > spec.adiabaticity_guard) {
    if (!spec.adjust_sweep || result.report.sweep_extensions >= kMaxSweepExtensions) {
      throw NumericalError("calibrate_hold: adiabaticity metric " +
                           std::to_string(result.report.adiabaticity_metric) + " exceeds guard " +
                           std::to_string(spec.adiabaticity_guard));
    }
    s = s.with_sweep(s.sweep_duration() * kSweepGrowth);
    ++result.report.sweep_extensions;
    result.report.adiabaticity_metric = adiabaticity_metric(s, physics).metric;
  }

  // The quadrature is affine in the hold with slope kappa_hold.
  const double edges = predicted_theta2(s.with_hold(0.0));
  double hold = (target - edges) / kappa_hold;
  if (hold < 0.0) {
    if (std::abs(target - edges) > spec.tolerance) {
      throw ValidationError("calibrate_hold: edges alone give theta2 = " + std::to_string(edges) +
                            ", beyond the target " + std::to_string(target));
    }
    hold = 0.0;
  }

  double h_prev = hold;
  double f_prev = simulated_theta2(s.with_hold(hold), physics, settings) - target;
  result.report.iterations = 1;
  double h_cur = hold;
  double f_cur = f_prev;
  if (std::abs(f_cur) > spec.tolerance) {
    h_cur = std::max(0.0, hold - f_prev / kappa_hold);
    f_cur = simulated_theta2(s.with_hold(h_cur), physics, settings) - target;
    result.report.iterations = 2;
  }
  while (std::abs(f_cur) > spec.tolerance) {
    if (result.report.iterations >= spec.max_iterations) {
      throw NumericalError("calibrate_hold: no convergence after " +
                           std::to_string(result.report.iterations) + " iterations (residual " +
                           std::to_string(f_cur) + " rad)");
    }
    const double slope = (h_cur != h_prev && f_cur != f_prev) ? (f_cur - f_prev) / (h_cur - h_prev)
                                                              : kappa_hold;
    const double h_next = std::max(0.0, h_cur - f_cur / slope);
    h_prev = h_cur;
    f_prev = f_cur;
    h_cur = h_next;
    f_cur = simulated_theta2(s.with_hold(h_cur), physics, settings) - target;
    ++result.report.iterations;
  }

  result.schedule = s.with_hold(h_cur);
  result.report.achieved = f_cur + target;
  result.report.predicted = predicted_theta2(result.schedule);
  return result;
}

RampObservables ramp_observables(const RampSchedule& schedule, const PhysicsParams& physics,
                                 const PropagationSettings& settings) {
  const auto traj = propagate_logical(DriveProgram::from_schedule(schedule), physics, settings);
  const RampBlock block = RampBlock::from_trajectories(traj);
  const AngleSet a = extract_angles(block.logical, *block.tracked_phases);
  RampObservables o;
  o.theta1 = a.theta1;
  o.theta2 = a.theta2;
  o.t_r = block.t_r;
  o.t_rr = block.t_rr[3];
  o.duration = schedule.duration();
  double leak = 0.0;
  for (int j = 0; j < 4; ++j) {
    leak += block.final_norm2[static_cast<std::size_t>(j)] - block.logical.col(j).squaredNorm();
  }
  o.leakage = std::max(0.0, leak / 4.0);
  o.fiducial_phi1 = -0.5 * (traj[1].tracked_phase + traj[2].tracked_phase);
  return o;
}

}  // namespace dressgate
