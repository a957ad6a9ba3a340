#pragma once

#include <boxlogic/scenario.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace boxlogic::app {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidInput = 2,
  kCapExceeded = 3,
  kTheoremViolation = 4,
};

struct RunConfig {
  std::string command;
  std::string scenario;
  Limits limits;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::optional<std::string> out_dir;
};

/// FNV-1a 64 of the canonical scenario JSON, as 16 hex digits.
std::string scenario_hash(const BoxWorldSpec& spec);

/// tool, version, command, scenario hash, caps and seed.
nlohmann::json report_header(const RunConfig& config, const BoxWorldSpec* spec);

nlohmann::json build_summary(const RunConfig& config, const BoxWorldSpec& spec);
/// Consolidated verification report; "passed" is the conjunction of all checks.
nlohmann::json verify_report(const RunConfig& config, const BoxWorldSpec& spec);
nlohmann::json even_set_report(const RunConfig& config, std::size_t k);

/// Parses argv and runs one command. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace boxlogic::app
