#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qtopo/io/config.hpp"

namespace qtopo::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Log-spaced times from t_min to t_max inclusive.
std::vector<double> log_time_grid(double t_min, double t_max, int points);

/// Runs the mode of `config` and writes its artifacts (plus the echoed
/// effective configuration, config.ini) into config.run.output. Files are
/// removed again if any step throws. Progress goes to `log`.
std::vector<std::filesystem::path> run(const RunConfig& config, std::ostream& log);

struct CliOptions {
  std::string mode;
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  bool full_budget = false;
};

/// Reads, overrides and runs; maps errors to exit codes (1 for usage and
/// configuration errors, 2 for numerical failures) with a message on `err`.
int run_cli(const CliOptions& options, std::ostream& log, std::ostream& err);

}  // namespace qtopo::io
