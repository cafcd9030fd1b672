#pragma once

// Scenario execution: runs the classical and/or quantum pipelines for a
// validated Scenario and writes the selected output files.

#include <filesystem>
#include <string>
#include <vector>

#include "spingauge/config.hpp"
#include "spingauge/outputs.hpp"

namespace spingauge {

struct ScenarioResult {
  RunReport report;
  /// Classical trajectory, thinned to every sample_every-th step.
  TrajectorySeries classical;
  std::vector<ObservableRecord> quantum;
  std::vector<std::filesystem::path> files;
};

/// Canonical digest of a scenario (FNV-1a of its resolved config text).
std::string scenario_digest(const Scenario& s);

/// Runs the scenario and writes `<prefix>_trajectory.csv`,
/// `<prefix>_observables.csv`, `<prefix>_summary.json` and `<prefix>.svg`
/// (as selected and applicable) into out_dir, creating it if needed. An
/// empty out_dir runs without writing files.
ScenarioResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

struct SweepPoint {
  std::string value;
  std::filesystem::path dir;
  RunReport report;
  /// Empty on success; otherwise the error message and its exit code.
  std::string error;
  int exit_code = 0;
};

/// Runs one scenario per value of `param` (a `section.key` name), each in
/// out_dir/<param>=<value>/, concurrently on up to `jobs` threads. Writes
/// out_dir/sweep_summary.json. Parse errors in the base document or in a
/// substituted value are raised before anything runs.
std::vector<SweepPoint> run_sweep(const ConfigDocument& base, const std::string& param,
                                  const std::vector<std::string>& values, const std::filesystem::path& out_dir,
                                  unsigned jobs = 0);

}  // namespace spingauge
