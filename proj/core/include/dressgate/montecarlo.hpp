#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dressgate/gates.hpp"
#include "dressgate/propagator.hpp"
#include "dressgate/ramps.hpp"

namespace dressgate {

struct NoiseModel {
  double sigma_delta = 0.0;  // rad/s
  double sigma_omega = 0.0;  // rad/s
  bool per_atom_independent = true;
  // Offsets held across both MS ramps; otherwise the second ramp gets fresh draws.
  bool static_within_gate = true;

  void validate() const;
};

struct Realization {
  DriveOffsets first;
  DriveOffsets second;
};

// Engine for one realization, determined by (seed, cell, sample) alone so any
// sample can be regenerated in isolation.
std::mt19937_64 realization_engine(std::uint64_t seed, std::uint64_t cell, std::uint64_t sample);

Realization sample_realization(const NoiseModel& model, std::mt19937_64& engine);

struct FidelityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

// k_1r sqrt(k_B T / m), rad/s.
double thermal_sigma_delta(const PhysicsParams& physics);

struct ThermalKappa {
  double delta_kappa = 0.0;  // rad/s
  double sigma_delta = 0.0;  // rad/s
  double dkappa_ddelta_a = 0.0;
  double dkappa_ddelta_b = 0.0;
  double kappa = 0.0;  // rad/s, at the unshifted drive
  // Second-order term of the central difference above 5% of the first-order one.
  bool step_too_large = false;
};

// sigma_delta * |grad kappa| with kappa from the finite-blockade two-atom
// sector with independent detunings; partials by central differences.
ThermalKappa delta_kappa_thermal(const AtomDrive& drive, const PhysicsParams& physics, double fd_step,
                                 StartSide side);

// pi / (kappa tau_r)
double decay_budget(double kappa, double tau_r);

enum class Protocol { ms, cz };

std::string_view to_string(Protocol protocol);
Protocol parse_protocol(std::string_view text);

enum class FiducialSource { simulated, closed_form };

struct ProtocolPlan {
  Protocol protocol = Protocol::ms;
  RampSchedule schedule;
  PhysicsParams physics;
  PropagationSettings settings;
  FiducialSource fiducial_source = FiducialSource::simulated;
  // Single-atom phase removed after a CZ ramp; filled by prepare() when empty.
  std::optional<double> fiducial_phi1;
  double ms_twist_sign = 1.0;
  bool ms_y_axis = false;

  void prepare();
};

// Single-atom phase of the noise-free ramp: the simulated -arg <01|psi>
// averaged over 01 and 10, or the quadrature of E_LS^(1).
double fiducial_phase(const RampSchedule& schedule, const PhysicsParams& physics,
                      const PropagationSettings& settings, FiducialSource source);

GateReport run_protocol(const ProtocolPlan& plan, const Realization& realization);

struct SweepOptions {
  bool per_atom_independent = true;
  bool static_within_gate = true;
  // 0 picks the DRESSGATE_THREADS environment variable or the hardware count.
  unsigned threads = 0;
};

struct SweepCell {
  double sigma_delta = 0.0;  // rad/s
  double sigma_omega = 0.0;  // rad/s
  FidelityEstimate estimate;
  std::size_t failures = 0;
  std::string first_error;
};

// Grid entries are (sigma_delta, sigma_omega) in rad/s. Failing samples are
// counted per cell and excluded from the mean; the sweep always continues.
std::vector<SweepCell> sweep(const ProtocolPlan& plan,
                             std::span<const std::pair<double, double>> sigma_grid,
                             std::size_t n_samples, std::uint64_t seed,
                             const SweepOptions& options = {});

unsigned default_thread_count();

}  // namespace dressgate
