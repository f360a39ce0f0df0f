#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dressgate/calibrate.hpp"
#include "dressgate/gates.hpp"
#include "dressgate/ramps.hpp"

namespace dressgate::cli {

std::string_view tool_version();

// Shortest round-trip decimal, '.' separator, independent of locale.
std::string format_number(double v);

// RFC-4180 style table: a "# ..." metadata line, a header row, data rows.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> header, std::string metadata);

  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::string metadata_;
  std::vector<std::vector<std::string>> rows_;
};

std::string metadata_line(std::string_view command, std::string_view config_hash,
                          std::string_view extra = {});

nlohmann::ordered_json schedule_to_json(const RampSchedule& schedule);
RampSchedule schedule_from_json(const nlohmann::json& node);

nlohmann::ordered_json report_to_json(const GateReport& report, double omega_max);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dressgate::cli
