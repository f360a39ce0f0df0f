#include "dressgate_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "dressgate/calibrate.hpp"
#include "dressgate/dressed.hpp"
#include "dressgate/errors.hpp"
#include "dressgate/gates.hpp"
#include "dressgate_cli/output.hpp"

namespace dressgate::cli {

namespace fs = std::filesystem;

namespace {

std::ostream& log_of(const CommandContext& ctx) {
  static std::ostringstream sink;
  return ctx.log ? *ctx.log : sink;
}

double protocol_target(const CommandContext& ctx) {
  if (ctx.config.calibration.target_theta2_rad) return *ctx.config.calibration.target_theta2_rad;
  return ctx.protocol == Protocol::ms ? kPi / 2.0 : kPi;
}

CalibrationSpec calibration_spec(const CommandContext& ctx) {
  CalibrationSpec spec;
  spec.target_theta2 = protocol_target(ctx);
  spec.tolerance = ctx.config.calibration.tolerance_rad;
  spec.adiabaticity_guard = ctx.config.calibration.adiabaticity_guard;
  spec.max_iterations = ctx.config.calibration.max_iterations;
  spec.adjust_sweep = ctx.config.calibration.adjust_sweep;
  return spec;
}

PhysicsParams physics_of(const CommandContext& ctx) {
  const PhysicsParams p = ctx.config.physics.to_physics();
  for (const std::string& w : p.warnings()) log_of(ctx) << "warning: " << w << "\n";
  return p;
}

ProtocolPlan plan_of(const CommandContext& ctx, const RampSchedule& schedule) {
  ProtocolPlan plan;
  plan.protocol = ctx.protocol;
  plan.schedule = schedule;
  plan.physics = physics_of(ctx);
  plan.settings = ctx.config.propagation.settings;
  plan.fiducial_source =
      ctx.config.noise.fiducial == "closed_form" ? FiducialSource::closed_form : FiducialSource::simulated;
  plan.prepare();
  return plan;
}

fs::path out_path(const CommandContext& ctx, const std::string& name) {
  return fs::path(ctx.config.out_dir) / name;
}

std::string protocol_name(const CommandContext& ctx) { return std::string(to_string(ctx.protocol)); }

}  // namespace

RampSchedule resolve_schedule(const CommandContext& ctx) {
  if (ctx.schedule_path) {
    std::ifstream in(*ctx.schedule_path);
    if (!in) throw ValidationError("cannot open schedule file '" + *ctx.schedule_path + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("schedule file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("schedule")) {
      throw ValidationError("schedule file has no 'schedule' object");
    }
    return schedule_from_json(doc["schedule"]);
  }
  const PhysicsParams physics = physics_of(ctx);
  const RampSchedule templ = ctx.config.schedule.shape.build(physics.omega_max);
  return calibrate_hold(templ, calibration_spec(ctx), physics, ctx.config.propagation.settings).schedule;
}

Written cmd_kappa_scan(const CommandContext& ctx) {
  const PhysicsParams physics = physics_of(ctx);
  const KappaScanConfig& k = ctx.config.kappa_scan;
  const double omega = physics.omega_max;
  CsvTable table({"branch", "omega_hz", "delta_over_omega", "e_ls1_over_omega", "e_ls2_over_omega",
                  "kappa_over_omega", "kappa_finite_over_omega", "finite_near_resonance"},
                 metadata_line("kappa-scan", ctx.config.hash()));
  for (StartSide side : {StartSide::blue, StartSide::red}) {
    for (int i = 0; i < k.points; ++i) {
      const double x = k.delta_from_over_omega +
                       (k.delta_to_over_omega - k.delta_from_over_omega) * i / (k.points - 1);
      const AtomDrive drive{omega, x * omega};
      const DressedAnalytics a = dressed_analytics(drive, side);
      const FiniteBlockadeKappa f = kappa_finite_blockade(drive, physics.v_dd, side);
      table.add_row({std::string(to_string(side)), format_number(ctx.config.physics.omega_max_hz),
                     format_number(x), format_number(a.e_ls1 / omega), format_number(a.e_ls2 / omega),
                     format_number(a.kappa / omega), format_number(f.kappa / omega),
                     f.near_resonance ? "1" : "0"});
    }
  }
  const fs::path path = out_path(ctx, "kappa_scan.csv");
  table.write(path);
  return {path};
}

Written cmd_calibrate(const CommandContext& ctx) {
  const PhysicsParams physics = physics_of(ctx);
  const RampSchedule templ = ctx.config.schedule.shape.build(physics.omega_max);
  const CalibrationResult cal =
      calibrate_hold(templ, calibration_spec(ctx), physics, ctx.config.propagation.settings);
  const RampObservables obs = ramp_observables(cal.schedule, physics, ctx.config.propagation.settings);
  const double period = kTwoPi / physics.omega_max;

  nlohmann::ordered_json doc;
  doc["tool"] = {{"name", "dressgate"}, {"version", std::string(tool_version())}};
  doc["config_hash"] = ctx.config.hash();
  doc["protocol"] = protocol_name(ctx);
  doc["schedule"] = schedule_to_json(cal.schedule);
  doc["calibration"] = {{"target", cal.report.target},
                        {"achieved", cal.report.achieved},
                        {"predicted", cal.report.predicted},
                        {"iterations", cal.report.iterations},
                        {"adiabaticity_metric", cal.report.adiabaticity_metric},
                        {"sweep_extensions", cal.report.sweep_extensions},
                        {"tolerance", ctx.config.calibration.tolerance_rad}};
  doc["observables"] = {{"duration_periods", obs.duration / period},
                        {"hold_periods", cal.schedule.hold_duration() / period},
                        {"theta1_rad", obs.theta1},
                        {"theta2_rad", obs.theta2},
                        {"t_r_01_periods", obs.t_r[1] / period},
                        {"t_r_10_periods", obs.t_r[2] / period},
                        {"t_r_11_periods", obs.t_r[3] / period},
                        {"t_rr_11_periods", obs.t_rr / period},
                        {"leakage", obs.leakage},
                        {"fiducial_phi1_rad", obs.fiducial_phi1}};
  const fs::path path = out_path(ctx, "schedule_" + protocol_name(ctx) + ".json");
  write_text(path, doc.dump(2) + "\n");
  return {path};
}

Written cmd_simulate(const CommandContext& ctx) {
  const RampSchedule schedule = resolve_schedule(ctx);
  const ProtocolPlan plan = plan_of(ctx, schedule);
  const GateReport report = run_protocol(plan, Realization{});
  const double omega = plan.physics.omega_max;

  nlohmann::ordered_json doc;
  doc["tool"] = {{"name", "dressgate"}, {"version", std::string(tool_version())}};
  doc["config_hash"] = ctx.config.hash();
  doc["protocol"] = protocol_name(ctx);
  doc["schedule"] = schedule_to_json(schedule);
  if (plan.fiducial_phi1) doc["fiducial_phi1_rad"] = *plan.fiducial_phi1;
  doc["report"] = report_to_json(report, omega);
  const fs::path report_path = out_path(ctx, "report_" + protocol_name(ctx) + ".json");
  write_text(report_path, doc.dump(2) + "\n");

  // One ramp, noise-free, for the population panels.
  const auto traj = propagate_logical(DriveProgram::from_schedule(schedule), plan.physics, plan.settings);
  const TrajectoryResult& r01 = traj[1];
  const TrajectoryResult& r11 = traj[3];
  CsvTable table({"t_periods", "p01_ground", "p01_rydberg", "p11", "p_bright", "p_rr"},
                 metadata_line("simulate", ctx.config.hash(), "protocol=" + protocol_name(ctx)));
  const double period = kTwoPi / omega;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < r11.sample_times.size(); ++k) {
    const State9& a = r01.sample_states[k];
    const State9& b = r11.sample_states[k];
    const Complex bright =
        inv_sqrt2 * (b(index_of(BasisState::s1r)) + b(index_of(BasisState::sr1)));
    table.add_row(std::vector<double>{
        (r11.sample_times[k] - schedule.t1) / period, std::norm(a(index_of(BasisState::s01))),
        std::norm(a(index_of(BasisState::s0r))), std::norm(b(index_of(BasisState::s11))),
        std::norm(bright), std::norm(b(index_of(BasisState::srr)))});
  }
  const fs::path pop_path = out_path(ctx, "populations_" + protocol_name(ctx) + ".csv");
  table.write(pop_path);
  log_of(ctx) << protocol_name(ctx) << " fidelity " << format_number(report.fidelity) << "\n";
  return {report_path, pop_path};
}

Written cmd_sweep(const CommandContext& ctx) {
  const RampSchedule schedule = resolve_schedule(ctx);
  const ProtocolPlan plan = plan_of(ctx, schedule);
  const NoiseConfig& n = ctx.config.noise;
  const double omega = plan.physics.omega_max;
  std::vector<std::pair<double, double>> grid;
  for (const auto& [d, o] : n.sigma_grid) grid.emplace_back(d * omega, o * omega);
  SweepOptions opts;
  opts.per_atom_independent = n.per_atom_independent;
  opts.static_within_gate = n.static_within_gate;
  const std::vector<SweepCell> cells = sweep(plan, grid, n.n_samples, n.seed, opts);

  CsvTable table({"sigma_delta_over_omega", "sigma_omega_over_omega", "mean_fidelity", "std_error",
                  "n", "failures", "error"},
                 metadata_line("sweep", ctx.config.hash(),
                               "protocol=" + protocol_name(ctx) + " seed=" + std::to_string(n.seed)));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& c = cells[i];
    table.add_row({format_number(n.sigma_grid[i].first), format_number(n.sigma_grid[i].second),
                   format_number(c.estimate.mean), format_number(c.estimate.std_error),
                   std::to_string(c.estimate.n_samples), std::to_string(c.failures), c.first_error});
  }
  const fs::path path = out_path(ctx, "sweep_" + protocol_name(ctx) + ".csv");
  table.write(path);
  return {path};
}

Written cmd_bd_check(const CommandContext& ctx) {
  CommandContext ms = ctx;
  ms.protocol = Protocol::ms;
  const RampSchedule schedule = resolve_schedule(ms);
  const PhysicsParams physics = physics_of(ctx);
  const BrightDarkConfig& b = ctx.config.bd_check;
  const double omega = physics.omega_max;
  // Coupling k p_rel / m; p_rel = (p_a - p_b) / 2 has thermal spread sqrt(m k_B T / 2).
  const double p_rel_thermal = std::sqrt(physics.mass * constants::kBoltzmann * physics.temperature / 2.0);
  const double thermal_coupling = physics.k_1r * p_rel_thermal / physics.mass / omega;
  CsvTable table({"p_rel_kg_m_s", "coupling_over_omega", "max_dark_population"},
                 metadata_line("bd-check", ctx.config.hash(),
                               "thermal_coupling_over_omega=" + format_number(thermal_coupling)));
  for (int i = 0; i < b.points; ++i) {
    const double x = b.coupling_to_over_omega * i / (b.points - 1);
    const double p_rel = physics.k_1r > 0.0 ? x * omega * physics.mass / physics.k_1r : 0.0;
    const BrightDarkTrajectory t = propagate_bright_dark(schedule, physics, 0.0, p_rel);
    table.add_row(std::vector<double>{p_rel, x, t.max_dark});
  }
  const fs::path path = out_path(ctx, "bd_check.csv");
  table.write(path);
  return {path};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"dressgate: Rydberg-dressing gate simulator and calibration tool"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::string protocol_text = "ms";
  std::string schedule_path;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--protocol", protocol_text, "ms or cz")->check(CLI::IsMember({"ms", "cz"}));
  app.add_option("--seed", seed, "Override noise.seed");
  app.add_option("--samples", samples, "Override noise.n_samples");
  app.add_option("--schedule", schedule_path, "Calibrated schedule JSON (simulate, sweep)");
  app.set_version_flag("--version", std::string(tool_version()));

  auto* kappa = app.add_subcommand("kappa-scan", "Light shifts and kappa versus detuning");
  auto* calibrate = app.add_subcommand("calibrate", "Calibrate the hold for the protocol");
  auto* simulate = app.add_subcommand("simulate", "Noise-free gate report and populations");
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo inhomogeneity sweep");
  auto* bd = app.add_subcommand("bd-check", "Dark-state population versus relative momentum");
  for (auto* sub : {kappa, calibrate, simulate, sweep_cmd, bd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    CommandContext ctx;
    ctx.log = &err;
    ctx.config = config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(config_path);
    if (!out_dir.empty()) ctx.config.out_dir = out_dir;
    if (app.count("--seed")) ctx.config.noise.seed = seed;
    if (app.count("--samples")) ctx.config.noise.n_samples = samples;
    ctx.config.validate();
    ctx.protocol = parse_protocol(protocol_text);
    if (!schedule_path.empty()) ctx.schedule_path = schedule_path;

    Written written;
    if (*kappa) written = cmd_kappa_scan(ctx);
    else if (*calibrate) written = cmd_calibrate(ctx);
    else if (*simulate) written = cmd_simulate(ctx);
    else if (*sweep_cmd) written = cmd_sweep(ctx);
    else written = cmd_bd_check(ctx);
    for (const auto& p : written) out << p.string() << "\n";
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure at t = " << e.time() << " s: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dressgate::cli
