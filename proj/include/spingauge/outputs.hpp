#pragma once

// Run reports and their deterministic file forms: CSV series, a JSON
// summary and a small SVG trajectory plot.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spingauge/classical.hpp"
#include "spingauge/wavepacket.hpp"

namespace spingauge {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kTrajectoryCsvHeader =
    "t,rx,ry,rz,px,py,pz,sx,sy,sz,f1x,f1y,f1z,f2x,f2y,f2z";
inline constexpr std::string_view kObservablesCsvHeader = "t,norm,rx,ry,px,py,sigx,sigy,sigz,ycu,ycd";

enum class CheckStatus { Pass, Fail, Info };

std::string_view to_string(CheckStatus status);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Info;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string note;
};

using ConfigEcho = std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;

struct RunReport {
  std::string kind = "run";  // "run" or "verify"
  /// FNV-1a hash of the canonical config echo (or of the verify parameters).
  std::string digest;
  ConfigEcho config;
  std::vector<Check> checks;
  /// Named scalar results grouped by section, e.g. metrics["ehrenfest"].
  std::map<std::string, std::map<std::string, double>> metrics;
  std::vector<std::string> notes;
  /// Wall-clock seconds. Reported on stdout only, never written to files,
  /// so that outputs stay byte-identical between runs.
  double seconds = 0.0;

  /// Appends a check with status Pass/Fail decided by max_error <= tolerance
  /// (NaN fails).
  Check& expect(std::string name, double max_error, double tolerance, std::string note = {});
  Check& info(std::string name, double value, std::string note);

  bool passed() const;
  std::size_t count(CheckStatus status) const;
};

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

std::string format_trajectory_csv(const TrajectorySeries& series);
std::string format_observables_csv(const std::vector<ObservableRecord>& records);
std::string format_summary_json(const RunReport& report);

/// Polylines of the classical (rx, ry) path, the quantum <r> and the spin-
/// resolved y-centroids against <x>. Either input may be empty.
std::string format_svg(const TrajectorySeries* classical, const std::vector<ObservableRecord>* quantum);

/// Writes text to path; throws IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// One-line human summary per check, for the console.
std::string format_check_lines(const RunReport& report);

}  // namespace spingauge
