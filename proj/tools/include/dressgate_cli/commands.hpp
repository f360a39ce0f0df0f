#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dressgate/montecarlo.hpp"
#include "dressgate_cli/config.hpp"

namespace dressgate::cli {

struct CommandContext {
  RunConfig config;
  Protocol protocol = Protocol::ms;
  std::optional<std::string> schedule_path;
  std::ostream* log = nullptr;
};

using Written = std::vector<std::filesystem::path>;

Written cmd_kappa_scan(const CommandContext& ctx);
Written cmd_calibrate(const CommandContext& ctx);
Written cmd_simulate(const CommandContext& ctx);
Written cmd_sweep(const CommandContext& ctx);
Written cmd_bd_check(const CommandContext& ctx);

// Calibrated schedule for the protocol: loaded from ctx.schedule_path when
// set, calibrated in process otherwise.
RampSchedule resolve_schedule(const CommandContext& ctx);

// Full command line entry point. Returns 0 on success, 2 on configuration or
// argument errors, 3 on numerical failure, 1 on I/O errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dressgate::cli
