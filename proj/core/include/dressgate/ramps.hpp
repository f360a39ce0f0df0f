#pragma once

#include <vector>

#include "dressgate/physics.hpp"

namespace dressgate {

// Dress / hold / undress pulse. On [t1, t2] the Rabi frequency rises as a
// Gaussian edge centred on t2 while |Delta| falls linearly from delta_max to
// delta_min; both are held at (omega_max, delta_min) on [t2, t3]; [t3, t4] is
// the mirror image of [t1, t2]. The detuning sign is fixed by start_side.
struct RampSchedule {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;
  double omega_min = 0.0;
  double omega_max = 0.0;
  double delta_min = 0.0;  // magnitude
  double delta_max = 0.0;  // magnitude
  double t_w = 0.0;
  StartSide start_side = StartSide::red;

  void validate() const;

  double duration() const { return t4 - t1; }
  double sweep_duration() const { return t2 - t1; }
  double hold_duration() const { return t3 - t2; }

  // Same edges, new hold; t3 and t4 move, t1 and t2 stay.
  RampSchedule with_hold(double hold) const;
  // Same hold, new edge duration; t_w scales with the edge.
  RampSchedule with_sweep(double sweep) const;
};

// Shape defaults expressed relative to Omega_max and the Rabi period.
struct RampShape {
  double sweep_periods = 4.0;          // (t2 - t1) in units of 2 pi / Omega_max
  double hold_periods = 0.33;          // (t3 - t2) in units of 2 pi / Omega_max
  double delta_max_ratio = 4.0;        // delta_max / Omega_max
  double delta_min_ratio = 0.1;        // delta_min / Omega_max
  double omega_min_ratio = 1.0e-3;     // omega_min / Omega_max
  double width_fraction = 0.2;         // t_w / (t2 - t1)
  StartSide start_side = StartSide::red;

  RampSchedule build(double omega_max) const;
};

double omega_at(const RampSchedule& schedule, double t);
double delta_at(const RampSchedule& schedule, double t);

struct KappaSample {
  double t = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
};

std::vector<KappaSample> kappa_profile(const RampSchedule& schedule, int n_points);

// Twist angle predicted by the perfect-blockade entangling energy,
// integral of kappa dt over [t1, t4]. Absolute tolerance 1e-6 rad.
double predicted_theta2(const RampSchedule& schedule);

// Integral of E_LS^(1) dt over [t1, t4], the one-atom dynamical phase in the
// adiabatic limit.
double predicted_single_atom_phase(const RampSchedule& schedule);

}  // namespace dressgate
