#include "dressgate/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "dressgate/dressed.hpp"
#include "dressgate/errors.hpp"

namespace dressgate {

namespace {

struct SampleOutcome {
  double fidelity = 0.0;
  bool ok = false;
  std::string error;
};

std::string describe(const Realization& r) {
  std::ostringstream os;
  os.precision(6);
  os << "offsets a=(" << r.first.atoms[0].delta << ", " << r.first.atoms[0].omega << ") b=("
     << r.first.atoms[1].delta << ", " << r.first.atoms[1].omega << ") rad/s";
  return os.str();
}

bool same_offsets(const DriveOffsets& x, const DriveOffsets& y) {
  for (std::size_t i = 0; i < 2; ++i) {
    if (x.atoms[i].delta != y.atoms[i].delta || x.atoms[i].omega != y.atoms[i].omega) return false;
  }
  return true;
}

RampBlock simulate_block(const ProtocolPlan& plan, const DriveOffsets& offsets) {
  const DriveProgram program = DriveProgram::from_schedule(plan.schedule, offsets);
  const auto traj = propagate_logical(program, plan.physics, plan.settings);
  return RampBlock::from_trajectories(traj);
}

}  // namespace

void NoiseModel::validate() const {
  if (!std::isfinite(sigma_delta) || !std::isfinite(sigma_omega) || sigma_delta < 0.0 ||
      sigma_omega < 0.0) {
    throw ValidationError("NoiseModel: sigmas must be finite and >= 0");
  }
}

std::mt19937_64 realization_engine(std::uint64_t seed, std::uint64_t cell, std::uint64_t sample) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(cell), hi(cell), lo(sample), hi(sample)};
  return std::mt19937_64(seq);
}

Realization sample_realization(const NoiseModel& model, std::mt19937_64& engine) {
  model.validate();
  boost::random::normal_distribution<double> unit(0.0, 1.0);
  const auto draw_offsets = [&] {
    DriveOffsets o;
    if (model.per_atom_independent) {
      for (AtomOffset& a : o.atoms) {
        a.delta = model.sigma_delta * unit(engine);
        a.omega = model.sigma_omega * unit(engine);
      }
    } else {
      AtomOffset common;
      common.delta = model.sigma_delta * unit(engine);
      common.omega = model.sigma_omega * unit(engine);
      o.atoms = {common, common};
    }
    return o;
  };
  Realization r;
  r.first = draw_offsets();
  r.second = model.static_within_gate ? r.first : draw_offsets();
  return r;
}

double thermal_sigma_delta(const PhysicsParams& physics) {
  if (!(physics.mass > 0.0) || !(physics.temperature >= 0.0) || !(physics.k_1r >= 0.0) ||
      !std::isfinite(physics.temperature) || !std::isfinite(physics.k_1r)) {
    throw ValidationError("thermal_sigma_delta: need mass > 0, temperature >= 0, k_1r >= 0");
  }
  return physics.k_1r * std::sqrt(constants::kBoltzmann * physics.temperature / physics.mass);
}

ThermalKappa delta_kappa_thermal(const AtomDrive& drive, const PhysicsParams& physics, double fd_step,
                                 StartSide side) {
  drive.validate();
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw ValidationError("delta_kappa_thermal: fd_step must be > 0");
  }
  ThermalKappa out;
  out.sigma_delta = thermal_sigma_delta(physics);
  const auto kappa = [&](double da, double db) {
    AtomDrive a = drive;
    AtomDrive b = drive;
    a.delta += da;
    b.delta += db;
    return kappa_two_atom(a, b, physics.v_dd, side).kappa;
  };
  out.kappa = kappa(0.0, 0.0);
  const double h = fd_step;
  const double ap = kappa(h, 0.0), am = kappa(-h, 0.0);
  const double bp = kappa(0.0, h), bm = kappa(0.0, -h);
  out.dkappa_ddelta_a = (ap - am) / (2.0 * h);
  out.dkappa_ddelta_b = (bp - bm) / (2.0 * h);
  const double quad = std::max(std::abs(ap - 2.0 * out.kappa + am), std::abs(bp - 2.0 * out.kappa + bm)) / 2.0;
  const double lin = std::max(std::abs(ap - am), std::abs(bp - bm)) / 2.0;
  out.step_too_large = quad > 0.05 * lin;
  out.delta_kappa = out.sigma_delta * std::hypot(out.dkappa_ddelta_a, out.dkappa_ddelta_b);
  return out;
}

double decay_budget(double kappa, double tau_r) {
  if (!(kappa > 0.0) || !(tau_r > 0.0) || !std::isfinite(kappa) || !std::isfinite(tau_r)) {
    throw ValidationError("decay_budget: kappa and tau_r must be > 0");
  }
  return kPi / (kappa * tau_r);
}

std::string_view to_string(Protocol protocol) { return protocol == Protocol::ms ? "ms" : "cz"; }

Protocol parse_protocol(std::string_view text) {
  if (text == "ms" || text == "MS") return Protocol::ms;
  if (text == "cz" || text == "CZ") return Protocol::cz;
  throw ValidationError("unknown protocol '" + std::string(text) + "' (expected ms or cz)");
}

double fiducial_phase(const RampSchedule& schedule, const PhysicsParams& physics,
                      const PropagationSettings& settings, FiducialSource source) {
  if (source == FiducialSource::closed_form) return predicted_single_atom_phase(schedule);
  const auto traj = propagate_logical(DriveProgram::from_schedule(schedule), physics, settings);
  return -0.5 * (traj[1].tracked_phase + traj[2].tracked_phase);
}

void ProtocolPlan::prepare() {
  schedule.validate();
  physics.validate();
  settings.validate();
  if (protocol == Protocol::cz && !fiducial_phi1) {
    fiducial_phi1 = fiducial_phase(schedule, physics, settings, fiducial_source);
  }
}

GateReport run_protocol(const ProtocolPlan& plan, const Realization& realization) {
  try {
    if (plan.protocol == Protocol::cz) {
      const double phi = plan.fiducial_phi1
                             ? *plan.fiducial_phi1
                             : fiducial_phase(plan.schedule, plan.physics, plan.settings,
                                              plan.fiducial_source);
      return compose_cz(simulate_block(plan, realization.first), phi);
    }
    const RampBlock first = simulate_block(plan, realization.first);
    MsOptions opts;
    opts.twist_sign = plan.ms_twist_sign;
    opts.y_axis = plan.ms_y_axis;
    if (same_offsets(realization.first, realization.second)) return compose_ms(first, first, opts);
    RampBlock second = simulate_block(plan, realization.second);
    // Resampled noise between ramps is deliberate here, not a configuration mix-up.
    second.provenance = first.provenance;
    return compose_ms(first, second, opts);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " [" + describe(realization) + "]", e.time());
  }
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("DRESSGATE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepCell> sweep(const ProtocolPlan& plan_in,
                             std::span<const std::pair<double, double>> sigma_grid,
                             std::size_t n_samples, std::uint64_t seed, const SweepOptions& options) {
  if (n_samples < 1) throw ValidationError("sweep: n_samples must be >= 1");
  ProtocolPlan plan = plan_in;
  plan.prepare();
  const unsigned threads = options.threads > 0 ? options.threads : default_thread_count();

  std::vector<SweepCell> cells;
  cells.reserve(sigma_grid.size());
  for (std::size_t c = 0; c < sigma_grid.size(); ++c) {
    NoiseModel model;
    model.sigma_delta = sigma_grid[c].first;
    model.sigma_omega = sigma_grid[c].second;
    model.per_atom_independent = options.per_atom_independent;
    model.static_within_gate = options.static_within_gate;
    model.validate();

    std::vector<SampleOutcome> outcomes(n_samples);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < n_samples; i = next.fetch_add(1)) {
        SampleOutcome& out = outcomes[i];
        try {
          auto engine = realization_engine(seed, c, i);
          const Realization r = sample_realization(model, engine);
          out.fidelity = run_protocol(plan, r).fidelity;
          out.ok = true;
        } catch (const std::exception& e) {
          out.error = e.what();
        }
      }
    };
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_samples));
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    SweepCell cell;
    cell.sigma_delta = model.sigma_delta;
    cell.sigma_omega = model.sigma_omega;
    cell.estimate.seed = seed;
    // Shifted by the first good sample so identical outcomes give exactly zero spread.
    double shift = 0.0;
    for (const SampleOutcome& o : outcomes) {
      if (o.ok) {
        shift = o.fidelity;
        break;
      }
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (const SampleOutcome& o : outcomes) {
      if (o.ok) {
        sum += o.fidelity - shift;
        ++n;
      } else {
        ++cell.failures;
        if (cell.first_error.empty()) cell.first_error = o.error;
      }
    }
    cell.estimate.n_samples = n;
    if (n > 0) {
      const double mean = sum / static_cast<double>(n);
      double ss = 0.0;
      for (const SampleOutcome& o : outcomes) {
        if (o.ok) ss += (o.fidelity - shift - mean) * (o.fidelity - shift - mean);
      }
      cell.estimate.mean = shift + mean;
      cell.estimate.std_error =
          n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace dressgate
