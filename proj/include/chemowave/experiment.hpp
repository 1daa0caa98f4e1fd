#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemowave/config.hpp"
#include "chemowave/diagnostics.hpp"
#include "chemowave/solver.hpp"
#include "chemowave/waves.hpp"

namespace chemowave {

/// Builds (u0, v0) for the configured kind, mollifies when mollify_delta > 0,
/// and checks u0 > 0 and any explicit boundary values (ConfigError otherwise).
SimState build_initial(const ScenarioConfig& cfg);

/// The object the run is measured against, derived from the initial data.
struct ScenarioReference {
  DiagnosticReference reference;
  std::optional<TravelingWave> wave;  ///< set for shock scenarios
  AsymptoticStates far_field;         ///< end values of the initial data
  RHResidual far_field_rh;            ///< jump-condition residuals of far_field
  double v_minus_mismatch = 0.0;      ///< far_field.v_minus - completed v_minus
  std::optional<ShiftResult> shift;
  std::optional<PerturbationPair> perturbation;
};

/// Throws ConfigError when the far-field states admit neither a constant
/// reference nor a monotone shock.
ScenarioReference derive_reference(const ScenarioConfig& cfg, const SimState& initial);

/// Default probe window: the jump, ramp midpoint, bump or block centre.
ProbeWindow default_probe_window(const ScenarioConfig& cfg);

/// R-H residuals of the declared states, using the wave speed they imply.
RHResidual declared_rh_residual(const ScenarioConfig& cfg);

struct RunOptions {
  bool emit_c = false;
  bool write_files = true;
  double c_ref = 1.0;  ///< c at the left end when emitting c
};

struct ScenarioResult {
  ScenarioResult(ScenarioConfig cfg, ScenarioReference ref, RunReport rep)
      : config(std::move(cfg)), reference(std::move(ref)), report(std::move(rep)) {}

  ScenarioConfig config;
  ScenarioReference reference;
  RunReport report;
  std::vector<DiagnosticsRecord> records;
  std::optional<DecayReport> decay;
  std::vector<double> reference_probe;  ///< reference-run probe per snapshot, if requested
  double front_speed = 0.0;             ///< NaN unless a shock scenario
  std::vector<std::pair<std::string, std::string>> manifest;

  /// Manifest value for `key`; throws UsageError when absent.
  const std::string& value(const std::string& key) const;
};

/// Keys present in every manifest.
const std::vector<std::string>& manifest_required_keys();

/// Runs one scenario. With write_files, writes snap_<index>.dat, series.csv
/// and manifest.txt under out_dir (IoError on failure).
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                            const RunOptions& options = {});

/// Text block of wave quantities printed by the `wave` and `validate` commands.
std::string describe_wave(const ScenarioConfig& cfg);

struct SweepEntry {
  std::size_t index = 0;
  double value = 0.0;
  std::optional<ScenarioResult> result;
  std::string error;  ///< empty on success
  std::optional<double> refinement_diff;    ///< n_nodes axis: L2 gap to the previous variant
  std::optional<double> refinement_factor;  ///< ratio of consecutive gaps
};

/// Runs base with `axis` set to each value in its own subdirectory
/// <out_dir>/<axis>_<index>, up to `threads` at a time, and writes
/// <out_dir>/sweep.csv. Failing variants are recorded and do not stop the others.
std::vector<SweepEntry> sweep(const ScenarioConfig& base, const std::string& axis,
                              const std::vector<double>& values,
                              const std::filesystem::path& out_dir, unsigned threads = 0,
                              const RunOptions& options = {});

}  // namespace chemowave
