#pragma once

#include <array>

#include "dressgate/physics.hpp"
#include "dressgate/propagator.hpp"
#include "dressgate/ramps.hpp"

namespace dressgate {

struct CalibrationSpec {
  // Twist magnitude; its sign follows kappa on the schedule's start side.
  double target_theta2 = kPi / 2.0;
  double tolerance = 1.0e-4;
  // Lengthen the edges when the adiabaticity guard fails instead of giving up.
  bool adjust_sweep = true;
  double adiabaticity_guard = 0.1;
  int max_iterations = 20;

  void validate() const;
};

struct CalibrationReport {
  double target = 0.0;     // signed
  double achieved = 0.0;   // simulated, unwrapped
  double predicted = 0.0;  // perfect-blockade quadrature at the final hold
  int iterations = 0;
  double adiabaticity_metric = 0.0;
  int sweep_extensions = 0;
};

struct CalibrationResult {
  RampSchedule schedule;
  CalibrationReport report;
};

// Hold-duration calibration on the simulated twist. Throws ValidationError
// for a non-bracketing template and NumericalError on guard violation or
// iteration exhaustion.
CalibrationResult calibrate_hold(const RampSchedule& templ, const CalibrationSpec& spec,
                                 const PhysicsParams& physics,
                                 const PropagationSettings& settings = {});

struct RampObservables {
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::array<double, 4> t_r{};  // logical order, seconds
  double t_rr = 0.0;            // |11> input, seconds
  double duration = 0.0;
  double leakage = 0.0;         // mean population outside the logical block
  double fiducial_phi1 = 0.0;   // single-atom phase removed by a CZ
};

RampObservables ramp_observables(const RampSchedule& schedule, const PhysicsParams& physics,
                                 const PropagationSettings& settings = {});

}  // namespace dressgate
