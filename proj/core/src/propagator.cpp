#include "dressgate/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "dressgate/dressed.hpp"
#include "dressgate/errors.hpp"
#include "dressgate/hamiltonian.hpp"

namespace dressgate {

namespace {

// Rows 0..8 hold amplitudes; row 9 accumulates the single-Rydberg population
// and row 10 the |rr> population, both per unit window length so that they are
// O(1) and sit under the same error control as the amplitudes.
constexpr int kRows = kTwoAtomDim + 2;
constexpr int kSingleRow = kTwoAtomDim;
constexpr int kDoubleRow = kTwoAtomDim + 1;
using Block = Eigen::Matrix<Complex, kRows, Eigen::Dynamic>;

constexpr int kSrr = index_of(BasisState::srr);

class FnvHasher {
 public:
  void add(double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      state_ ^= b;
      state_ *= 1099511628211ULL;
    }
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 14695981039346656037ULL;
};

double wrap_angle(double x) { return std::remainder(x, kTwoPi); }

struct Problem {
  const DriveProgram& program;
  const PhysicsParams& physics;
  double window = 0.0;

  TwoAtomCoefficients coefficients(double t) const {
    const DrivePair d = program.at(t);
    return TwoAtomCoefficients::from(d.a, d.b, physics.v_dd, physics.gamma_r);
  }

  void rhs(double t, const Block& y, Block& dy) const {
    const TwoAtomCoefficients c = coefficients(t);
    auto amp_out = dy.topRows<kTwoAtomDim>();
    c.apply(y.topRows<kTwoAtomDim>(), amp_out);
    amp_out *= Complex(0.0, -1.0);
    for (Eigen::Index col = 0; col < y.cols(); ++col) {
      double single = 0.0;
      for (int i = 0; i < kTwoAtomDim; ++i) {
        if (rydberg_count(i) == 1) single += std::norm(y(i, col));
      }
      dy(kSingleRow, col) = single / window;
      dy(kDoubleRow, col) = std::norm(y(kSrr, col)) / window;
    }
  }
};

struct Tracker {
  std::vector<int> label_rows;  // -1 when the column has no basis label
  std::vector<double> last_arg;
  std::vector<double> phase;

  void init(const Block& y) {
    last_arg.assign(label_rows.size(), 0.0);
    phase.assign(label_rows.size(), 0.0);
    for (std::size_t c = 0; c < label_rows.size(); ++c) {
      if (label_rows[c] >= 0) {
        last_arg[c] = std::arg(y(label_rows[c], static_cast<Eigen::Index>(c)));
        phase[c] = last_arg[c];
      }
    }
  }

  void update(const Block& y) {
    for (std::size_t c = 0; c < label_rows.size(); ++c) {
      if (label_rows[c] < 0) continue;
      const Complex z = y(label_rows[c], static_cast<Eigen::Index>(c));
      if (std::abs(z) < 1.0e-12) continue;
      const double a = std::arg(z);
      phase[c] += wrap_angle(a - last_arg[c]);
      last_arg[c] = a;
    }
  }
};

struct Stops {
  std::vector<double> times;
  std::vector<bool> is_sample;
};

Stops make_stops(const DriveProgram& program, int samples) {
  const double a = program.begin();
  const double b = program.end();
  const double eps = 1.0e-12 * (b - a);
  std::vector<std::pair<double, bool>> all;
  for (int k = 1; k < samples; ++k) {
    const double t = k == samples - 1 ? b : a + (b - a) * k / (samples - 1);
    all.emplace_back(t, true);
  }
  for (double t : program.breakpoints()) {
    if (t > a + eps && t < b - eps) all.emplace_back(t, false);
  }
  std::sort(all.begin(), all.end());
  Stops s;
  for (const auto& [t, sample] : all) {
    if (!s.times.empty() && t - s.times.back() <= eps) {
      if (sample) s.is_sample.back() = true;
      continue;
    }
    s.times.push_back(t);
    s.is_sample.push_back(sample);
  }
  return s;
}

double error_norm(const Block& err, const Block& y0, const Block& y1, const PropagationSettings& st) {
  double acc = 0.0;
  for (Eigen::Index c = 0; c < err.cols(); ++c) {
    for (int i = 0; i < kRows; ++i) {
      const double scale = st.abs_tol + st.rel_tol * std::max(std::abs(y0(i, c)), std::abs(y1(i, c)));
      const double r = std::abs(err(i, c)) / scale;
      acc += r * r;
    }
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

struct RunOutput {
  Block final_block;
  std::vector<double> sample_times;
  std::vector<Block> samples;
  Tracker tracker;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Dormand-Prince 5(4) with FSAL and local extrapolation.
void integrate_embedded_pair(const Problem& p, const Stops& stops, const PropagationSettings& st,
                             Block& y, RunOutput& out) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const Eigen::Index cols = y.cols();
  Block k1(kRows, cols), k2(kRows, cols), k3(kRows, cols), k4(kRows, cols), k5(kRows, cols),
      k6(kRows, cols), k7(kRows, cols), tmp(kRows, cols), ynew(kRows, cols), err(kRows, cols);

  double t = p.program.begin();
  const double min_step = 1.0e-13 * p.window;
  p.rhs(t, y, k1);

  const double hnorm = p.coefficients(t).dense().cwiseAbs().rowwise().sum().maxCoeff();
  double h = p.window / 100.0;
  if (hnorm > 0.0) h = std::min(h, 0.05 / hnorm);
  if (st.max_step > 0.0) h = std::min(h, st.max_step);

  for (std::size_t s = 0; s < stops.times.size(); ++s) {
    const double target = stops.times[s];
    while (t < target) {
      double step = std::min(h, target - t);
      const bool lands = (target - t - step) <= 1.0e-12 * p.window;
      if (lands) step = target - t;

      tmp = y + step * a21 * k1;
      p.rhs(t + c2 * step, tmp, k2);
      tmp = y + step * (a31 * k1 + a32 * k2);
      p.rhs(t + c3 * step, tmp, k3);
      tmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
      p.rhs(t + c4 * step, tmp, k4);
      tmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      p.rhs(t + c5 * step, tmp, k5);
      tmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      p.rhs(t + step, tmp, k6);
      ynew = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      p.rhs(t + step, ynew, k7);
      err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double en = error_norm(err, y, ynew, st);
      if (!std::isfinite(en)) {
        throw NumericalError("propagate: non-finite error estimate", t);
      }
      if (en <= 1.0) {
        t = lands ? target : t + step;
        y = ynew;
        k1 = k7;
        out.tracker.update(y);
        ++out.accepted;
        const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        h = std::max(h, step) * (en == 0.0 ? 5.0 : std::min(fac, 5.0));
        if (fac < 1.0) h = step * fac;
      } else {
        ++out.rejected;
        h = step * std::max(0.2, 0.9 * std::pow(en, -0.2));
        if (h < min_step) {
          throw NumericalError("propagate: step size underflow at t = " + std::to_string(t), t);
        }
      }
      if (st.max_step > 0.0) h = std::min(h, st.max_step);
    }
    if (stops.is_sample[s]) {
      out.sample_times.push_back(t);
      out.samples.push_back(y);
    }
  }
}

// Midpoint-Hamiltonian exponential steps with ||H|| h <= 0.1; populations are
// integrated with Simpson's rule using the half-step state.
void integrate_piecewise_exponential(const Problem& p, const Stops& stops,
                                     const PropagationSettings& st, Block& y, RunOutput& out) {
  const Eigen::Index cols = y.cols();
  double t = p.program.begin();
  const auto population_rates = [&](const Block& b, Eigen::Index c, double& single, double& dbl) {
    single = 0.0;
    for (int i = 0; i < kTwoAtomDim; ++i) {
      if (rydberg_count(i) == 1) single += std::norm(b(i, c));
    }
    dbl = std::norm(b(kSrr, c));
  };

  for (std::size_t s = 0; s < stops.times.size(); ++s) {
    const double target = stops.times[s];
    while (t < target) {
      const Operator9 h_start = p.coefficients(t).dense();
      const double norm = h_start.cwiseAbs().rowwise().sum().maxCoeff();
      double step = target - t;
      if (norm > 0.0) step = std::min(step, 0.1 / norm);
      if (st.max_step > 0.0) step = std::min(step, st.max_step);
      if ((target - t - step) <= 1.0e-12 * p.window) step = target - t;

      const Operator9 h_mid = p.coefficients(t + 0.5 * step).dense();
      const Operator9 half = (h_mid * Complex(0.0, -0.5 * step)).exp();
      Block mid = y;
      mid.topRows<kTwoAtomDim>() = half * y.topRows<kTwoAtomDim>();
      Block end = mid;
      end.topRows<kTwoAtomDim>() = half * mid.topRows<kTwoAtomDim>();
      for (Eigen::Index c = 0; c < cols; ++c) {
        double s0, d0, sm, dm, s1, d1;
        population_rates(y, c, s0, d0);
        population_rates(mid, c, sm, dm);
        population_rates(end, c, s1, d1);
        end(kSingleRow, c) = y(kSingleRow, c) + step / 6.0 * (s0 + 4.0 * sm + s1) / p.window;
        end(kDoubleRow, c) = y(kDoubleRow, c) + step / 6.0 * (d0 + 4.0 * dm + d1) / p.window;
      }
      out.tracker.update(mid);
      y = end;
      out.tracker.update(y);
      t = (target - t - step) <= 0.0 ? target : t + step;
      ++out.accepted;
    }
    if (stops.is_sample[s]) {
      out.sample_times.push_back(t);
      out.samples.push_back(y);
    }
  }
}

std::vector<TrajectoryResult> run(const DriveProgram& program, const PhysicsParams& physics,
                                  const std::vector<State9>& initial,
                                  const std::vector<std::optional<BasisState>>& labels,
                                  const PropagationSettings& settings) {
  physics.validate();
  settings.validate();
  if (!(program.end() > program.begin())) throw ValidationError("propagate: empty time window");

  const Eigen::Index cols = static_cast<Eigen::Index>(initial.size());
  Block y = Block::Zero(kRows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) y.col(c).head<kTwoAtomDim>() = initial[c];

  Problem problem{program, physics, program.end() - program.begin()};
  const Stops stops = make_stops(program, settings.population_samples);

  RunOutput out;
  out.tracker.label_rows.resize(initial.size(), -1);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    if (labels[c]) out.tracker.label_rows[c] = index_of(*labels[c]);
  }
  out.tracker.init(y);
  out.sample_times.push_back(program.begin());
  out.samples.push_back(y);

  if (settings.method == PropagationMethod::adaptive_embedded_pair) {
    integrate_embedded_pair(problem, stops, settings, y, out);
  } else {
    integrate_piecewise_exponential(problem, stops, settings, y, out);
  }

  const std::uint64_t provenance = program.fingerprint() ^ (fingerprint(physics) * 31ULL);
  std::vector<TrajectoryResult> results(initial.size());
  for (Eigen::Index c = 0; c < cols; ++c) {
    TrajectoryResult& r = results[static_cast<std::size_t>(c)];
    r.final_state = y.col(c).head<kTwoAtomDim>();
    r.t_r = std::max(0.0, y(kSingleRow, c).real()) * problem.window;
    r.t_rr = std::max(0.0, y(kDoubleRow, c).real()) * problem.window;
    r.final_norm = r.final_state.norm();
    r.sample_times = out.sample_times;
    r.sample_states.reserve(out.samples.size());
    for (const Block& b : out.samples) r.sample_states.push_back(b.col(c).head<kTwoAtomDim>());
    r.initial_label = labels[static_cast<std::size_t>(c)];
    r.tracked_phase = out.tracker.phase[static_cast<std::size_t>(c)];
    r.provenance = provenance;
    r.accepted_steps = out.accepted;
    r.rejected_steps = out.rejected;
  }
  return results;
}

State9 basis_vector(BasisState s) {
  State9 v = State9::Zero();
  v(index_of(s)) = 1.0;
  return v;
}

}  // namespace

void PropagationSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1.0e-3) || !(abs_tol > 0.0 && abs_tol <= 1.0e-3)) {
    throw ValidationError("PropagationSettings: tolerances must lie in (0, 1e-3]");
  }
  if (!(max_step >= 0.0) || !std::isfinite(max_step)) {
    throw ValidationError("PropagationSettings: max_step must be finite and >= 0 (0 = uncapped)");
  }
  if (population_samples < 2) throw ValidationError("PropagationSettings: need >= 2 samples");
}

DriveProgram::DriveProgram(Function fn, double begin, double end, std::vector<double> breakpoints,
                           std::uint64_t fingerprint)
    : fn_(std::move(fn)),
      begin_(begin),
      end_(end),
      breakpoints_(std::move(breakpoints)),
      fingerprint_(fingerprint) {
  if (!fn_) throw ValidationError("DriveProgram: empty drive function");
  if (!std::isfinite(begin_) || !std::isfinite(end_) || !(end_ > begin_)) {
    throw ValidationError("DriveProgram: invalid time window");
  }
}

DriveProgram DriveProgram::from_schedule(const RampSchedule& schedule, const DriveOffsets& offsets) {
  schedule.validate();
  const auto fn = [schedule, offsets](double t) {
    const double omega = omega_at(schedule, t);
    const double delta = delta_at(schedule, t);
    DrivePair d;
    AtomDrive* atoms[2] = {&d.a, &d.b};
    for (int i = 0; i < 2; ++i) {
      const AtomOffset& o = offsets.atoms[static_cast<std::size_t>(i)];
      const double scale = schedule.omega_max > 0.0 ? 1.0 + o.omega / schedule.omega_max : 1.0;
      atoms[i]->omega = std::max(0.0, omega * scale);
      atoms[i]->delta = delta + o.delta;
    }
    return d;
  };
  return DriveProgram(fn, schedule.t1, schedule.t4, {schedule.t2, schedule.t3},
                      ::dressgate::fingerprint(schedule, offsets));
}

DriveProgram DriveProgram::constant(const DrivePair& drives, double duration) {
  drives.a.validate();
  drives.b.validate();
  FnvHasher h;
  for (double v : {drives.a.omega, drives.a.delta, drives.b.omega, drives.b.delta, duration}) h.add(v);
  return DriveProgram([drives](double) { return drives; }, 0.0, duration, {}, h.value());
}

std::array<double, kTwoAtomDim> TrajectoryResult::populations_at(std::size_t sample) const {
  std::array<double, kTwoAtomDim> p{};
  const State9& s = sample_states.at(sample);
  for (int i = 0; i < kTwoAtomDim; ++i) p[i] = std::norm(s(i));
  return p;
}

TrajectoryResult propagate(const DriveProgram& program, const PhysicsParams& physics,
                           const InitialState& initial, const PropagationSettings& settings) {
  State9 psi;
  std::optional<BasisState> label;
  if (const auto* b = std::get_if<BasisState>(&initial)) {
    psi = basis_vector(*b);
    label = *b;
  } else {
    psi = std::get<State9>(initial);
    if (!psi.allFinite() || std::abs(psi.norm() - 1.0) > 1.0e-10) {
      throw ValidationError("propagate: initial state must be finite and normalized");
    }
  }
  return std::move(run(program, physics, {psi}, {label}, settings).front());
}

TrajectoryResult propagate(const RampSchedule& schedule, const DriveOffsets& offsets,
                           const PhysicsParams& physics, const InitialState& initial,
                           const PropagationSettings& settings) {
  return propagate(DriveProgram::from_schedule(schedule, offsets), physics, initial, settings);
}

std::array<TrajectoryResult, 4> propagate_logical(const DriveProgram& program,
                                                  const PhysicsParams& physics,
                                                  const PropagationSettings& settings) {
  std::vector<State9> init;
  std::vector<std::optional<BasisState>> labels;
  for (BasisState s : kLogicalStates) {
    init.push_back(basis_vector(s));
    labels.emplace_back(s);
  }
  auto results = run(program, physics, init, labels, settings);
  return {std::move(results[0]), std::move(results[1]), std::move(results[2]),
          std::move(results[3])};
}

Matrix4c logical_block(std::span<const TrajectoryResult, 4> trajectories) {
  Matrix4c block;
  for (int j = 0; j < 4; ++j) {
    const TrajectoryResult& r = trajectories[static_cast<std::size_t>(j)];
    if (!r.initial_label || *r.initial_label != kLogicalStates[static_cast<std::size_t>(j)]) {
      throw ValidationError("logical_block: trajectory " + std::to_string(j) +
                            " does not start from logical input " +
                            std::string(label_of(kLogicalStates[static_cast<std::size_t>(j)])));
    }
    if (r.provenance != trajectories[0].provenance) {
      throw ValidationError("logical_block: trajectories come from different runs");
    }
    for (int i = 0; i < 4; ++i) {
      block(i, j) = r.final_state(index_of(kLogicalStates[static_cast<std::size_t>(i)]));
    }
  }
  return block;
}

AdiabaticityReport adiabaticity_metric(const RampSchedule& schedule, const PhysicsParams& physics,
                                       int n_points) {
  schedule.validate();
  if (n_points < 3) throw ValidationError("adiabaticity_metric: need >= 3 points");
  const double v_dd = physics.v_dd;
  const double dt = 1.0e-5 * schedule.duration();
  const double gap_floor = 1.0e-9 * std::max(schedule.omega_max, schedule.delta_max);

  const auto pair_block = [&](double t) {
    const double om = omega_at(schedule, t);
    const double de = delta_at(schedule, t);
    Eigen::Matrix2d m;
    m << 0.0, om / 2.0, om / 2.0, -de;
    return m;
  };
  const auto blockade_block = [&](double t) {
    const double g = std::sqrt(2.0) * omega_at(schedule, t) / 2.0;
    const double de = delta_at(schedule, t);
    Eigen::Matrix3d m;
    m << 0.0, g, 0.0, g, -de, g, 0.0, g, v_dd - 2.0 * de;
    return m;
  };

  AdiabaticityReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();

  const auto scan = [&](auto make_block) {
    using M = decltype(make_block(0.0));
    using Solver = Eigen::SelfAdjointEigenSolver<M>;
    const auto ground = [](const Solver& s) {
      Eigen::Index best = 0;
      double w = -1.0;
      for (Eigen::Index k = 0; k < s.eigenvectors().cols(); ++k) {
        const double x = s.eigenvectors()(0, k) * s.eigenvectors()(0, k);
        if (x > w) {
          w = x;
          best = k;
        }
      }
      return best;
    };
    for (int i = 0; i < n_points; ++i) {
      const double t = schedule.t1 + schedule.duration() * i / (n_points - 1);
      const double tm = std::max(schedule.t1, t - dt);
      const double tp = std::min(schedule.t4, t + dt);
      const Solver s0(make_block(t));
      const Solver sm(make_block(tm));
      const Solver sp(make_block(tp));
      const Eigen::Index g0 = ground(s0);
      auto gm = sm.eigenvectors().col(ground(sm)).eval();
      auto gp = sp.eigenvectors().col(ground(sp)).eval();
      const auto g = s0.eigenvectors().col(g0);
      if (gm.dot(g) < 0.0) gm = -gm;
      if (gp.dot(g) < 0.0) gp = -gp;
      const auto dg = ((gp - gm) / (tp - tm)).eval();
      for (Eigen::Index k = 0; k < s0.eigenvectors().cols(); ++k) {
        if (k == g0) continue;
        const double gap = std::abs(s0.eigenvalues()(k) - s0.eigenvalues()(g0));
        rep.min_gap = std::min(rep.min_gap, gap);
        if (gap < gap_floor) {
          rep.degenerate_gap = true;
          continue;
        }
        const double m = std::abs(s0.eigenvectors().col(k).dot(dg)) / gap;
        if (m > rep.metric) {
          rep.metric = m;
          rep.worst_time = t;
        }
      }
    }
  };
  scan(pair_block);
  scan(blockade_block);
  return rep;
}

BrightDarkTrajectory propagate_bright_dark(const RampSchedule& schedule, const PhysicsParams& physics,
                                           double p_cm, double p_rel, int population_samples) {
  schedule.validate();
  physics.validate();
  if (population_samples < 2) throw ValidationError("propagate_bright_dark: need >= 2 samples");
  using Vec4 = Eigen::Matrix<Complex, 4, 1>;
  const auto hamiltonian = [&](double t) {
    BDModelParams p;
    p.omega_a = p.omega_b = omega_at(schedule, t);
    p.delta = delta_at(schedule, t);
    p.p_cm = p_cm;
    p.p_rel = p_rel;
    p.mass = physics.mass;
    p.total_mass = 2.0 * physics.mass;
    return build_bd_hamiltonian(p, physics.v_dd, physics.k_1r);
  };
  const auto record = [](BrightDarkTrajectory& out, double t, const Vec4& psi) {
    std::array<double, 4> pop{};
    for (int k = 0; k < 4; ++k) pop[static_cast<std::size_t>(k)] = std::norm(psi(k));
    out.sample_times.push_back(t);
    out.sample_populations.push_back(pop);
  };

  BrightDarkTrajectory out;
  Vec4 psi = Vec4::Zero();
  psi(kBDGround) = 1.0;
  double t = schedule.t1;
  record(out, t, psi);
  for (int k = 1; k < population_samples; ++k) {
    const double target = k == population_samples - 1
                              ? schedule.t4
                              : schedule.t1 + schedule.duration() * k / (population_samples - 1);
    while (t < target) {
      const double norm = hamiltonian(t).cwiseAbs().rowwise().sum().maxCoeff();
      double step = target - t;
      if (norm > 0.0) step = std::min(step, 0.05 / norm);
      const bool lands = (target - t - step) <= 1.0e-12 * schedule.duration();
      if (lands) step = target - t;
      const Eigen::SelfAdjointEigenSolver<Matrix4d> es(hamiltonian(t + 0.5 * step));
      Vec4 phases;
      for (int i = 0; i < 4; ++i) phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * step));
      const Eigen::Matrix4cd v = es.eigenvectors().cast<Complex>();
      psi = v * phases.asDiagonal() * (v.transpose() * psi);
      out.max_dark = std::max(out.max_dark, std::norm(psi(kBDDark)));
      t = lands ? target : t + step;
    }
    record(out, t, psi);
  }
  return out;
}

std::uint64_t fingerprint(const RampSchedule& s, const DriveOffsets& offsets) {
  FnvHasher h;
  for (double v : {s.t1, s.t2, s.t3, s.t4, s.omega_min, s.omega_max, s.delta_min, s.delta_max, s.t_w,
                   side_sign(s.start_side)}) {
    h.add(v);
  }
  for (const AtomOffset& o : offsets.atoms) {
    h.add(o.delta);
    h.add(o.omega);
  }
  return h.value();
}

std::uint64_t fingerprint(const PhysicsParams& p) {
  FnvHasher h;
  for (double v : {p.omega_max, p.v_dd, p.gamma_r, p.k_1r, p.mass, p.temperature}) h.add(v);
  return h.value();
}

}  // namespace dressgate
