#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chemowave/diagnostics.hpp"
#include "chemowave/grid.hpp"
#include "chemowave/params.hpp"
#include "chemowave/solver.hpp"

namespace chemowave {

/// Flat "key = value" text with optional [section] headers; '#' starts a
/// comment. Keys are addressed as "section.key" (top-level keys bare).
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Keys never read through a getter.
  std::vector<std::string> unused_keys() const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
};

enum class InitialKind { piecewise_constant, ramp_h1, exact_wave_plus_bump, constant_plus_jump, from_file };

std::string_view to_string(InitialKind kind);
/// Throws ConfigError for unknown names.
InitialKind initial_kind_from_string(std::string_view name);

struct InitialSpec {
  InitialKind kind = InitialKind::piecewise_constant;
  std::map<std::string, double> values;  ///< kind-specific numeric parameters
  std::filesystem::path file;            ///< from_file only

  double at(const std::string& key) const;
  double at(const std::string& key, double fallback) const;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::string seed_label;
  GridSpec grid{0.0, 1.0, GridSpec::kMinNodes};
  ModelParams params;
  SchemeConfig scheme;  ///< boundaries are filled in from the initial data
  InitialSpec initial;
  double mollify_delta = 0.0;
  std::optional<AsymptoticStates> declared_states;
  std::optional<std::pair<BoundaryValues, BoundaryValues>> boundary;
  std::optional<ProbeWindow> probe;
  bool reference_run = false;

  /// Re-emits the configuration as ordered key/value pairs.
  std::vector<std::pair<std::string, std::string>> echo() const;

  /// Applies one sweep axis value: mollify_delta, n_nodes, cfl or jump_height.
  /// Throws ConfigError for any other axis.
  void apply_axis(const std::string& axis, double value);
};

/// Relative from_file paths resolve against `base_dir`. Throws ConfigError.
ScenarioConfig scenario_from_config(const KeyValueConfig& kv,
                                    const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace chemowave
