#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dressgate/basis.hpp"
#include "dressgate/physics.hpp"
#include "dressgate/ramps.hpp"
#include "dressgate/types.hpp"

namespace dressgate {

enum class PropagationMethod { adaptive_embedded_pair, piecewise_exponential };

struct PropagationSettings {
  double rel_tol = 1.0e-9;
  double abs_tol = 1.0e-11;
  double max_step = 0.0;  // seconds; 0 means no cap beyond the sample grid
  PropagationMethod method = PropagationMethod::adaptive_embedded_pair;
  int population_samples = 512;

  void validate() const;
};

// Static per-atom offsets for one gate: Delta_i(t) + delta, Omega_i(t) * (1 + omega / Omega_max).
struct AtomOffset {
  double delta = 0.0;  // rad/s
  double omega = 0.0;  // rad/s, relative to Omega_max
};

struct DriveOffsets {
  std::array<AtomOffset, 2> atoms{};
};

struct DrivePair {
  AtomDrive a;
  AtomDrive b;
};

// Time-dependent drives for both atoms over a finite window.
class DriveProgram {
 public:
  using Function = std::function<DrivePair(double)>;

  DriveProgram(Function fn, double begin, double end, std::vector<double> breakpoints = {},
               std::uint64_t fingerprint = 0);

  static DriveProgram from_schedule(const RampSchedule& schedule, const DriveOffsets& offsets = {});
  static DriveProgram constant(const DrivePair& drives, double duration);

  DrivePair at(double t) const { return fn_(t); }
  double begin() const { return begin_; }
  double end() const { return end_; }
  // Interior times where the drive has a kink; the integrators step onto them.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  Function fn_;
  double begin_;
  double end_;
  std::vector<double> breakpoints_;
  std::uint64_t fingerprint_;
};

using InitialState = std::variant<BasisState, State9>;

struct TrajectoryResult {
  State9 final_state = State9::Zero();
  std::vector<double> sample_times;
  std::vector<State9> sample_states;
  // Integral of the population with exactly one Rydberg excitation (s).
  double t_r = 0.0;
  // Integral of the |rr> population (s).
  double t_rr = 0.0;
  double final_norm = 1.0;
  // Unwrapped arg <initial|psi(t)> at the end of the window, tracked step by
  // step. Only meaningful when the trajectory starts from a basis label.
  double tracked_phase = 0.0;
  std::optional<BasisState> initial_label;
  std::uint64_t provenance = 0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  std::array<double, kTwoAtomDim> populations_at(std::size_t sample) const;
};

TrajectoryResult propagate(const DriveProgram& program, const PhysicsParams& physics,
                           const InitialState& initial, const PropagationSettings& settings = {});

TrajectoryResult propagate(const RampSchedule& schedule, const DriveOffsets& offsets,
                           const PhysicsParams& physics, const InitialState& initial,
                           const PropagationSettings& settings = {});

// The four computational inputs {00, 01, 10, 11} integrated together on one
// shared step sequence.
std::array<TrajectoryResult, 4> propagate_logical(const DriveProgram& program,
                                                  const PhysicsParams& physics,
                                                  const PropagationSettings& settings = {});

// Column j is the final state of trajectory j projected onto the logical
// subspace. Trajectories must start from 00, 01, 10, 11 in that order and share
// one provenance; throws ValidationError otherwise.
Matrix4c logical_block(std::span<const TrajectoryResult, 4> trajectories);

struct AdiabaticityReport {
  double metric = 0.0;
  double worst_time = 0.0;
  double min_gap = 0.0;
  bool degenerate_gap = false;
};

// Largest |<e_k| d/dt g>| / |E_k - E_g| along the schedule, over the
// blockaded {|11>, |B>, |rr>} block and the one-atom {|1>, |r>} block.
// Derivatives are central finite differences of the instantaneous eigenvectors.
AdiabaticityReport adiabaticity_metric(const RampSchedule& schedule, const PhysicsParams& physics,
                                       int n_points = 2001);

// Symmetric drive on the bright/dark model {|G>, |B>, |D>, |rr>} along a
// schedule, starting in |G>. Midpoint exponential steps with ||H|| h <= 0.05.
struct BrightDarkTrajectory {
  std::vector<double> sample_times;
  std::vector<std::array<double, 4>> sample_populations;
  // Maximum |D> population over every step, not only the samples.
  double max_dark = 0.0;
};

BrightDarkTrajectory propagate_bright_dark(const RampSchedule& schedule, const PhysicsParams& physics,
                                           double p_cm, double p_rel, int population_samples = 512);

std::uint64_t fingerprint(const RampSchedule& schedule, const DriveOffsets& offsets);
std::uint64_t fingerprint(const PhysicsParams& physics);

}  // namespace dressgate
