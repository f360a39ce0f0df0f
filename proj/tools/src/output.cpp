#include "dressgate_cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "dressgate/errors.hpp"

#ifndef DRESSGATE_VERSION
#define DRESSGATE_VERSION "0.0.0"
#endif

namespace dressgate::cli {

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double require_number(const nlohmann::json& node, const char* key) {
  const auto it = node.find(key);
  if (it == node.end() || !it->is_number()) {
    throw ValidationError(std::string("schedule artifact: missing numeric field '") + key + "'");
  }
  return it->get<double>();
}

nlohmann::ordered_json complex_matrix(const Matrix4c& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < 4; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string_view tool_version() { return DRESSGATE_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header, std::string metadata)
    : header_(std::move(header)), metadata_(std::move(metadata)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CsvTable: row width mismatch");
  rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out = "# " + metadata_ + "\n";
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += quote(cells[i]);
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

std::string metadata_line(std::string_view command, std::string_view config_hash,
                          std::string_view extra) {
  std::string s = "dressgate " + std::string(tool_version()) + " command=" + std::string(command) +
                  " config_hash=" + std::string(config_hash);
  if (!extra.empty()) s += " " + std::string(extra);
  return s;
}

nlohmann::ordered_json schedule_to_json(const RampSchedule& s) {
  return {{"t1_s", s.t1},
          {"t2_s", s.t2},
          {"t3_s", s.t3},
          {"t4_s", s.t4},
          {"omega_min_rad_s", s.omega_min},
          {"omega_max_rad_s", s.omega_max},
          {"delta_min_rad_s", s.delta_min},
          {"delta_max_rad_s", s.delta_max},
          {"t_w_s", s.t_w},
          {"start_side", std::string(to_string(s.start_side))}};
}

RampSchedule schedule_from_json(const nlohmann::json& node) {
  if (!node.is_object()) throw ValidationError("schedule artifact: 'schedule' must be an object");
  static const char* known[] = {"t1_s",   "t2_s",        "t3_s",  "t4_s",      "omega_min_rad_s",
                                "omega_max_rad_s", "delta_min_rad_s", "delta_max_rad_s", "t_w_s",
                                "start_side"};
  for (const auto& [k, v] : node.items()) {
    if (std::find(std::begin(known), std::end(known), k) == std::end(known)) {
      throw ValidationError("schedule artifact: unknown key '" + k + "'");
    }
  }
  RampSchedule s;
  s.t1 = require_number(node, "t1_s");
  s.t2 = require_number(node, "t2_s");
  s.t3 = require_number(node, "t3_s");
  s.t4 = require_number(node, "t4_s");
  s.omega_min = require_number(node, "omega_min_rad_s");
  s.omega_max = require_number(node, "omega_max_rad_s");
  s.delta_min = require_number(node, "delta_min_rad_s");
  s.delta_max = require_number(node, "delta_max_rad_s");
  s.t_w = require_number(node, "t_w_s");
  const auto side = node.find("start_side");
  if (side == node.end() || !side->is_string()) {
    throw ValidationError("schedule artifact: missing 'start_side'");
  }
  s.start_side = parse_start_side(side->get<std::string>());
  s.validate();
  return s;
}

nlohmann::ordered_json report_to_json(const GateReport& r, double omega_max) {
  const double period = kTwoPi / omega_max;
  nlohmann::ordered_json t_r;
  for (std::size_t j = 0; j < 4; ++j) {
    t_r[std::string(label_of(kLogicalStates[j]))] = r.t_r_by_input[j];
  }
  nlohmann::ordered_json t_r_periods;
  for (std::size_t j = 0; j < 4; ++j) {
    t_r_periods[std::string(label_of(kLogicalStates[j]))] = r.t_r_by_input[j] / period;
  }
  return {{"fidelity", r.fidelity},
          {"angles",
           {{"theta1_rad", r.angles.theta1},
            {"theta2_rad", r.angles.theta2},
            {"axis", std::string(to_string(r.angles.axis))},
            {"unwrapped", r.angles.unwrapped}}},
          {"t_r_s", t_r},
          {"t_r_periods", t_r_periods},
          {"t_rr_s", r.t_rr},
          {"leakage", r.leakage},
          {"norm_loss", r.norm_loss},
          {"logical", complex_matrix(r.logical)},
          {"target", complex_matrix(r.target)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace dressgate::cli
