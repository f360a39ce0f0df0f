#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dressgate/calibrate.hpp"
#include "dressgate/montecarlo.hpp"
#include "dressgate/physics.hpp"
#include "dressgate/propagator.hpp"
#include "dressgate/ramps.hpp"

namespace dressgate::cli {

// Frequencies are given in cycles (Hz) and ratios to Omega_max; everything is
// converted to angular units here.
struct PhysicsConfig {
  double omega_max_hz = 4.0e6;
  double v_dd_over_omega = 10.0;
  double tau_r_us = 140.0;
  double wavelength_nm = 319.0;
  double mass_amu = constants::kCesiumMassAmu;
  double temperature_uk = 10.0;
  bool decay_enabled = true;

  PhysicsParams to_physics() const;
};

struct ScheduleConfig {
  RampShape shape;
};

struct CalibrationConfig {
  double tolerance_rad = 1.0e-4;
  double adiabaticity_guard = 0.1;
  int max_iterations = 20;
  bool adjust_sweep = true;
  // Per protocol default (pi/2 per MS ramp, pi for CZ) when absent.
  std::optional<double> target_theta2_rad;
};

struct PropagationConfig {
  PropagationSettings settings;
};

struct NoiseConfig {
  // (sigma_delta, sigma_omega) as fractions of Omega_max.
  std::vector<std::pair<double, double>> sigma_grid = {{0.0, 0.0}, {0.05, 0.05}, {0.1, 0.1}};
  std::size_t n_samples = 1000;
  std::uint64_t seed = 20190614;
  bool per_atom_independent = true;
  bool static_within_gate = true;
  std::string fiducial = "simulated";
};

struct KappaScanConfig {
  double delta_from_over_omega = -20.0;
  double delta_to_over_omega = 20.0;
  int points = 401;
};

struct BrightDarkConfig {
  // k_1r p_rel / m range, in units of Omega_max.
  double coupling_to_over_omega = 0.05;
  int points = 11;
};

struct RunConfig {
  PhysicsConfig physics;
  ScheduleConfig schedule;
  CalibrationConfig calibration;
  PropagationConfig propagation;
  NoiseConfig noise;
  KappaScanConfig kappa_scan;
  BrightDarkConfig bd_check;
  std::string out_dir = "out";

  void validate() const;
  nlohmann::ordered_json to_json() const;
  // FNV-1a over the canonical JSON dump of the effective configuration.
  std::string hash() const;
};

// Missing keys keep their defaults; unknown keys and bad values throw
// ValidationError naming the offending path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace dressgate::cli
