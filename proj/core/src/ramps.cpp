#include "dressgate/ramps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dressgate/dressed.hpp"
#include "dressgate/errors.hpp"
#include "dressgate/types.hpp"

namespace dressgate {

namespace {

constexpr double kQuadratureTolerance = 1.0e-6;

void require_in_window(const RampSchedule& s, double t) {
  if (!(t >= s.t1 && t <= s.t4)) {
    throw std::out_of_range("ramp query at t = " + std::to_string(t) + " outside [t1, t4]");
  }
}

// Map the undressing edge onto the dressing edge: f(t) = f(t1 + t4 - t).
double mirrored(const RampSchedule& s, double t) { return t > s.t3 ? s.t1 + s.t4 - t : t; }

double rising_omega(const RampSchedule& s, double t) {
  if (t >= s.t2) return s.omega_max;
  const double x = (t - s.t2) / s.t_w;
  return s.omega_min + (s.omega_max - s.omega_min) * std::exp(-0.5 * x * x);
}

double falling_detuning(const RampSchedule& s, double t) {
  if (t >= s.t2) return s.delta_min;
  return s.delta_max - (s.delta_max - s.delta_min) * (t - s.t1) / (s.t2 - s.t1);
}

double integrate_piecewise(const RampSchedule& s, const std::function<double(double)>& f,
                           const char* what) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double edges[] = {s.t1, s.t2, s.t3, s.t4};
  double total = 0.0;
  double error_total = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    double error = 0.0;
    // On u in [0, 1]: the Kronrod error estimate misbehaves on sub-microsecond intervals.
    const double a = edges[i];
    const double len = edges[i + 1] - edges[i];
    const auto g = [&](double u) { return f(std::min(a + u * len, edges[i + 1])) * len; };
    total += Quad::integrate(g, 0.0, 1.0, 15, 1.0e-12, &error);
    error_total += error;
  }
  if (!(error_total <= kQuadratureTolerance) || !std::isfinite(total)) {
    throw NumericalError(std::string(what) + ": quadrature did not converge (error estimate " +
                         std::to_string(error_total) + " rad)");
  }
  return total;
}

}  // namespace

void RampSchedule::validate() const {
  const double all[] = {t1, t2, t3, t4, omega_min, omega_max, delta_min, delta_max, t_w};
  for (double v : all) {
    if (!std::isfinite(v)) throw ValidationError("RampSchedule: non-finite field");
  }
  if (!(t1 < t2 && t2 <= t3 && t3 < t4)) {
    throw ValidationError("RampSchedule: require t1 < t2 <= t3 < t4");
  }
  const double edge_in = t2 - t1;
  const double edge_out = t4 - t3;
  if (std::abs(edge_in - edge_out) > 1.0e-9 * (t4 - t1)) {
    throw ValidationError("RampSchedule: undressing edge must mirror the dressing edge");
  }
  if (omega_min < 0.0 || omega_min > omega_max) {
    throw ValidationError("RampSchedule: require 0 <= omega_min <= omega_max");
  }
  if (!(delta_min > 0.0) || delta_min > delta_max) {
    throw ValidationError("RampSchedule: require 0 < delta_min <= delta_max");
  }
  if (!(t_w > 0.0)) throw ValidationError("RampSchedule: t_w must be > 0");
}

RampSchedule RampSchedule::with_hold(double hold) const {
  if (!(hold >= 0.0)) throw ValidationError("hold duration must be >= 0");
  RampSchedule out = *this;
  const double edge = t2 - t1;
  out.t3 = t2 + hold;
  out.t4 = out.t3 + edge;
  return out;
}

RampSchedule RampSchedule::with_sweep(double sweep) const {
  if (!(sweep > 0.0)) throw ValidationError("sweep duration must be > 0");
  RampSchedule out = *this;
  const double hold = t3 - t2;
  out.t_w = t_w * sweep / (t2 - t1);
  out.t2 = t1 + sweep;
  out.t3 = out.t2 + hold;
  out.t4 = out.t3 + sweep;
  return out;
}

RampSchedule RampShape::build(double omega_max) const {
  if (!(omega_max > 0.0)) throw ValidationError("RampShape: omega_max must be > 0");
  const double period = kTwoPi / omega_max;
  RampSchedule s;
  s.t1 = 0.0;
  s.t2 = sweep_periods * period;
  s.t3 = s.t2 + hold_periods * period;
  s.t4 = s.t3 + sweep_periods * period;
  s.omega_max = omega_max;
  s.omega_min = omega_min_ratio * omega_max;
  s.delta_max = delta_max_ratio * omega_max;
  s.delta_min = delta_min_ratio * omega_max;
  s.t_w = width_fraction * (s.t2 - s.t1);
  s.start_side = start_side;
  s.validate();
  return s;
}

double omega_at(const RampSchedule& schedule, double t) {
  require_in_window(schedule, t);
  return rising_omega(schedule, mirrored(schedule, t));
}

double delta_at(const RampSchedule& schedule, double t) {
  require_in_window(schedule, t);
  return side_sign(schedule.start_side) * falling_detuning(schedule, mirrored(schedule, t));
}

std::vector<KappaSample> kappa_profile(const RampSchedule& schedule, int n_points) {
  schedule.validate();
  if (n_points < 2) throw ValidationError("kappa_profile: n_points must be >= 2");
  std::vector<KappaSample> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    // Endpoints exact so the series is mirror symmetric.
    const double t = i == n_points - 1
                         ? schedule.t4
                         : schedule.t1 + schedule.duration() * i / (n_points - 1);
    KappaSample k;
    k.t = t;
    k.omega = omega_at(schedule, t);
    k.delta = delta_at(schedule, t);
    k.kappa = kappa_perfect_blockade({k.omega, k.delta}, schedule.start_side);
    out.push_back(k);
  }
  return out;
}

double predicted_theta2(const RampSchedule& schedule) {
  schedule.validate();
  const auto f = [&](double t) {
    return kappa_perfect_blockade({omega_at(schedule, t), delta_at(schedule, t)},
                                  schedule.start_side);
  };
  return integrate_piecewise(schedule, f, "predicted_theta2");
}

double predicted_single_atom_phase(const RampSchedule& schedule) {
  schedule.validate();
  const auto f = [&](double t) {
    return light_shift_one({omega_at(schedule, t), delta_at(schedule, t)}, schedule.start_side);
  };
  return integrate_piecewise(schedule, f, "predicted_single_atom_phase");
}

}  // namespace dressgate
