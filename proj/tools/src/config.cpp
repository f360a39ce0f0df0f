#include "dressgate_cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "dressgate/errors.hpp"

namespace dressgate::cli {

namespace {

using nlohmann::json;

// Reads one JSON object, remembering which keys were consumed.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_ + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = node_.find(key);
    if (it == node_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ValidationError(path_ + "." + key + ": wrong type");
    }
  }

  void read_positive(const char* key, double& out) {
    read(key, out);
    if (!(out > 0.0) || !std::isfinite(out)) {
      throw ValidationError(path_ + "." + key + " must be a positive number");
    }
  }

  void read_non_negative(const char* key, double& out) {
    read(key, out);
    if (!(out >= 0.0) || !std::isfinite(out)) {
      throw ValidationError(path_ + "." + key + " must be >= 0");
    }
  }

  std::optional<Section> child(const char* key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    if (it == node_.end()) return std::nullopt;
    return Section(*it, path_ + "." + key);
  }

  const json* raw(const char* key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [k, v] : node_.items()) {
      if (!seen_.count(k)) throw ValidationError(path_ + "." + k + ": unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

PropagationMethod parse_method(const std::string& s) {
  if (s == "adaptive") return PropagationMethod::adaptive_embedded_pair;
  if (s == "piecewise_exponential") return PropagationMethod::piecewise_exponential;
  throw ValidationError("propagation.method must be 'adaptive' or 'piecewise_exponential'");
}

std::string method_name(PropagationMethod m) {
  return m == PropagationMethod::adaptive_embedded_pair ? "adaptive" : "piecewise_exponential";
}

}  // namespace

PhysicsParams PhysicsConfig::to_physics() const {
  PhysicsParams p;
  p.omega_max = hz_to_angular(omega_max_hz);
  p.v_dd = v_dd_over_omega * p.omega_max;
  p.gamma_r = decay_enabled ? 1.0 / (tau_r_us * 1.0e-6) : 0.0;
  p.k_1r = kTwoPi / (wavelength_nm * 1.0e-9);
  p.mass = mass_amu * constants::kAtomicMassUnit;
  p.temperature = temperature_uk * 1.0e-6;
  return p;
}

void RunConfig::validate() const {
  physics.to_physics().validate();
  schedule.shape.build(physics.to_physics().omega_max).validate();
  propagation.settings.validate();
  CalibrationSpec spec;
  spec.tolerance = calibration.tolerance_rad;
  spec.adiabaticity_guard = calibration.adiabaticity_guard;
  spec.max_iterations = calibration.max_iterations;
  if (calibration.target_theta2_rad) spec.target_theta2 = *calibration.target_theta2_rad;
  spec.validate();
  if (noise.n_samples < 1) throw ValidationError("noise.n_samples must be >= 1");
  if (noise.sigma_grid.empty()) throw ValidationError("noise.sigma_grid must not be empty");
  for (const auto& [d, o] : noise.sigma_grid) {
    if (!(d >= 0.0) || !(o >= 0.0) || !std::isfinite(d) || !std::isfinite(o)) {
      throw ValidationError("noise.sigma_grid entries must be finite and >= 0");
    }
  }
  if (noise.fiducial != "simulated" && noise.fiducial != "closed_form") {
    throw ValidationError("noise.fiducial must be 'simulated' or 'closed_form'");
  }
  if (kappa_scan.points < 2 || !(kappa_scan.delta_to_over_omega > kappa_scan.delta_from_over_omega)) {
    throw ValidationError("kappa_scan: need points >= 2 and delta_to > delta_from");
  }
  if (bd_check.points < 2 || !(bd_check.coupling_to_over_omega > 0.0)) {
    throw ValidationError("bd_check: need points >= 2 and coupling_to_over_omega > 0");
  }
  if (out_dir.empty()) throw ValidationError("output.dir must not be empty");
}

RunConfig parse_config(const nlohmann::json& doc) {
  RunConfig c;
  Section root(doc, "config");

  if (auto s = root.child("physics")) {
    s->read_positive("omega_max_hz", c.physics.omega_max_hz);
    s->read_positive("v_dd_over_omega", c.physics.v_dd_over_omega);
    s->read_positive("tau_r_us", c.physics.tau_r_us);
    s->read_positive("wavelength_nm", c.physics.wavelength_nm);
    s->read_positive("mass_amu", c.physics.mass_amu);
    s->read_non_negative("temperature_uk", c.physics.temperature_uk);
    s->read("decay_enabled", c.physics.decay_enabled);
    s->finish();
  }
  if (auto s = root.child("schedule")) {
    RampShape& r = c.schedule.shape;
    s->read_positive("sweep_periods", r.sweep_periods);
    s->read_non_negative("hold_periods", r.hold_periods);
    s->read_positive("delta_max_over_omega", r.delta_max_ratio);
    s->read_positive("delta_min_over_omega", r.delta_min_ratio);
    s->read_non_negative("omega_min_over_omega", r.omega_min_ratio);
    s->read_positive("width_fraction", r.width_fraction);
    std::string side = std::string(to_string(r.start_side));
    s->read("start_side", side);
    r.start_side = parse_start_side(side);
    s->finish();
  }
  if (auto s = root.child("calibration")) {
    s->read_positive("tolerance_rad", c.calibration.tolerance_rad);
    s->read_positive("adiabaticity_guard", c.calibration.adiabaticity_guard);
    s->read("max_iterations", c.calibration.max_iterations);
    s->read("adjust_sweep", c.calibration.adjust_sweep);
    if (const json* t = s->raw("target_theta2_rad")) {
      if (!t->is_number()) throw ValidationError("calibration.target_theta2_rad: wrong type");
      c.calibration.target_theta2_rad = t->get<double>();
    }
    s->finish();
  }
  if (auto s = root.child("propagation")) {
    PropagationSettings& p = c.propagation.settings;
    s->read_positive("rel_tol", p.rel_tol);
    s->read_positive("abs_tol", p.abs_tol);
    s->read_non_negative("max_step_s", p.max_step);
    std::string method = method_name(p.method);
    s->read("method", method);
    p.method = parse_method(method);
    s->read("population_samples", p.population_samples);
    s->finish();
  }
  if (auto s = root.child("noise")) {
    if (const json* g = s->raw("sigma_grid")) {
      if (!g->is_array()) throw ValidationError("noise.sigma_grid must be an array of [d, o] pairs");
      c.noise.sigma_grid.clear();
      for (const json& e : *g) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
          throw ValidationError("noise.sigma_grid entries must be [sigma_delta, sigma_omega]");
        }
        c.noise.sigma_grid.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
    }
    s->read("n_samples", c.noise.n_samples);
    s->read("seed", c.noise.seed);
    s->read("per_atom_independent", c.noise.per_atom_independent);
    s->read("static_within_gate", c.noise.static_within_gate);
    s->read("fiducial", c.noise.fiducial);
    s->finish();
  }
  if (auto s = root.child("kappa_scan")) {
    s->read("delta_from_over_omega", c.kappa_scan.delta_from_over_omega);
    s->read("delta_to_over_omega", c.kappa_scan.delta_to_over_omega);
    s->read("points", c.kappa_scan.points);
    s->finish();
  }
  if (auto s = root.child("bd_check")) {
    s->read_positive("coupling_to_over_omega", c.bd_check.coupling_to_over_omega);
    s->read("points", c.bd_check.points);
    s->finish();
  }
  if (auto s = root.child("output")) {
    s->read("dir", c.out_dir);
    s->finish();
  }
  root.finish();
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["physics"] = {{"omega_max_hz", physics.omega_max_hz},
                  {"v_dd_over_omega", physics.v_dd_over_omega},
                  {"tau_r_us", physics.tau_r_us},
                  {"wavelength_nm", physics.wavelength_nm},
                  {"mass_amu", physics.mass_amu},
                  {"temperature_uk", physics.temperature_uk},
                  {"decay_enabled", physics.decay_enabled}};
  const RampShape& r = schedule.shape;
  j["schedule"] = {{"sweep_periods", r.sweep_periods},
                   {"hold_periods", r.hold_periods},
                   {"delta_max_over_omega", r.delta_max_ratio},
                   {"delta_min_over_omega", r.delta_min_ratio},
                   {"omega_min_over_omega", r.omega_min_ratio},
                   {"width_fraction", r.width_fraction},
                   {"start_side", std::string(dressgate::to_string(r.start_side))}};
  j["calibration"] = {{"tolerance_rad", calibration.tolerance_rad},
                      {"adiabaticity_guard", calibration.adiabaticity_guard},
                      {"max_iterations", calibration.max_iterations},
                      {"adjust_sweep", calibration.adjust_sweep}};
  if (calibration.target_theta2_rad) {
    j["calibration"]["target_theta2_rad"] = *calibration.target_theta2_rad;
  }
  const PropagationSettings& p = propagation.settings;
  j["propagation"] = {{"rel_tol", p.rel_tol},
                      {"abs_tol", p.abs_tol},
                      {"max_step_s", p.max_step},
                      {"method", method_name(p.method)},
                      {"population_samples", p.population_samples}};
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const auto& [d, o] : noise.sigma_grid) grid.push_back({d, o});
  j["noise"] = {{"sigma_grid", grid},
                {"n_samples", noise.n_samples},
                {"seed", noise.seed},
                {"per_atom_independent", noise.per_atom_independent},
                {"static_within_gate", noise.static_within_gate},
                {"fiducial", noise.fiducial}};
  j["kappa_scan"] = {{"delta_from_over_omega", kappa_scan.delta_from_over_omega},
                     {"delta_to_over_omega", kappa_scan.delta_to_over_omega},
                     {"points", kappa_scan.points}};
  j["bd_check"] = {{"coupling_to_over_omega", bd_check.coupling_to_over_omega},
                   {"points", bd_check.points}};
  j["output"] = {{"dir", out_dir}};
  return j;
}

std::string RunConfig::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dressgate::cli
