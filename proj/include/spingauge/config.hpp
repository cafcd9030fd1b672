#pragma once

// Sectioned key-value run configuration.
//
//   # comment
//   [units]
//   G = 0.02
//   [field]
//   kind = uniform
//   E0 = 0, 0, 1
//
// Sections: units, field, particle, wavepacket, grid, integration, output.
// Unknown sections or keys, duplicate keys and malformed values are parse
// errors; inconsistent combinations are validation errors.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spingauge/classical.hpp"
#include "spingauge/wavepacket.hpp"

namespace spingauge {

enum class Mode { Classical, Quantum, Both };

std::string_view to_string(Mode mode);

struct OutputSelection {
  std::string prefix = "run";
  bool trajectory_csv = true;
  bool observables_csv = true;
  bool summary_json = true;
  bool svg = true;
};

struct Scenario {
  UnitSystem units;
  EFieldSpec field;
  Mode mode = Mode::Classical;
  ParticleState particle;
  bool confine_2d = true;
  WavepacketSpec wavepacket;
  Grid2D grid;
  double dt = 1e-2;
  int n_steps = 1000;
  int sample_every = 10;
  double fd_step = kDefaultStep;
  OutputSelection outputs;
  std::uint64_t seed = 0;
};

/// One `key = value` line with its source position.
struct ConfigEntry {
  std::string value;
  int line = 0;
  int value_column = 0;
};

/// Raw parsed document: section -> key -> entry.
struct ConfigDocument {
  std::map<std::string, std::map<std::string, ConfigEntry>> sections;

  bool has_section(const std::string& name) const { return sections.count(name) != 0; }

  /// Set (or replace) `section.key`. Throws ParseError for names outside the
  /// schema.
  void set(std::string_view dotted_key, std::string value);
};

ConfigDocument parse_document(std::string_view text);
Scenario build_scenario(const ConfigDocument& doc);

/// parse_document followed by build_scenario.
Scenario parse_config(std::string_view text);

/// Canonical text form; parse_config(to_config_text(s)) reproduces s.
std::string to_config_text(const Scenario& s);

/// Every schema key with its resolved value (defaults included), grouped by
/// section, in schema order.
std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
resolved_entries(const Scenario& s);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace spingauge
