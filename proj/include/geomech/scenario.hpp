#pragma once

// Scenario runner behind the command-line tool. A scenario is a single JSON
// document; `builtin` names a preset whose fields the document may override.

#include "geomech/algebroid_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace geomech {

enum class ScenarioKind { classical, schrodinger, heisenberg, equivalence, uncertainty, structure_check };

ScenarioKind parse_kind(const std::string& name);
std::string to_string(ScenarioKind kind);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::classical;
  nlohmann::json doc;  ///< merged document (builtin preset + overrides)
  std::uint64_t seed = 0;
  double hbar = 1.0;
};

/// Resolves `builtin`, merges overrides and validates. Throws ConfigError.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct CheckResult {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct RunManifest {
  std::string config_hash;
  std::string kind;
  double hbar = 1.0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;
  bool numerical_failure = false;
  std::string failure_message;

  bool pass() const;
  /// 0 pass, 1 a check failed, 3 numerical failure.
  int exit_code() const;
  nlohmann::json to_json() const;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> hbar;
  /// Evaluate checks without writing data artifacts (the manifest is still written when out_dir is set).
  bool checks_only = false;
};

/// Executes the scenario and writes artifacts plus manifest.json into out_dir.
RunManifest run_scenario(ScenarioConfig config, const RunOptions& options);

struct BuiltinInfo {
  std::string name;
  std::string kind;
  std::string description;
  nlohmann::json dims;
};

/// Stable, name-sorted.
std::vector<BuiltinInfo> list_builtins();
/// The preset document for a builtin; throws ConfigError for unknown names.
nlohmann::json builtin_scenario(const std::string& name);

/// 64-bit FNV-1a, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace geomech
