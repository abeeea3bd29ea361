#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace smoothctl::cli {

/// Parsed command line, shared by every subcommand.
struct RunManifest {
  std::string config_path;  // optional for commands with full defaults
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;  // key=value, dots descend into objects
};

/// Exit codes: 0 success, 1 config error, 2 solver or environment error,
/// 3 certification failure.
int cmd_run(const RunManifest& m);
int cmd_sweep(const RunManifest& m);
int cmd_certify(const RunManifest& m);
int cmd_sandwich(const RunManifest& m);
int cmd_curves(const RunManifest& m);

/// Reads and parses a JSON config file; throws ConfigError on any problem.
nlohmann::json load_config(const std::string& path);

/// Applies one key=value override; "a.b=1" descends into object a.  Values
/// parse as JSON when possible, otherwise as raw strings.
void apply_override(nlohmann::json& j, const std::string& kv);

/// Fills env-specific x0 / lc / target defaults into a run config.
void fill_run_defaults(nlohmann::json& cfg);

}  // namespace smoothctl::cli
