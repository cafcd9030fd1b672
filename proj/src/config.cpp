#include "spingauge/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace spingauge {

namespace {

struct SectionSchema {
  std::string_view name;
  std::vector<std::string_view> keys;
};

const std::vector<SectionSchema>& schema() {
  static const std::vector<SectionSchema> s = {
      {"units", {"hbar", "e", "m", "G"}},
      {"field", {"kind", "E0", "gradient"}},
      {"particle", {"r", "p", "s", "confine_2d"}},
      {"wavepacket", {"center", "k0", "width", "spin"}},
      {"grid", {"nx", "ny", "lx", "ly"}},
      {"integration", {"mode", "dt", "n_steps", "sample_every", "fd_step", "seed"}},
      {"output", {"prefix", "trajectory_csv", "observables_csv", "summary_json", "svg"}},
  };
  return s;
}

const SectionSchema* find_section(std::string_view name) {
  for (const auto& s : schema()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool known_key(const SectionSchema& s, std::string_view key) {
  return std::find(s.keys.begin(), s.keys.end(), key) != s.keys.end();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Value accessors bound to one section of a document.
class Reader {
 public:
  Reader(const ConfigDocument& doc, std::string section) : section_(std::move(section)) {
    auto it = doc.sections.find(section_);
    if (it != doc.sections.end()) entries_ = &it->second;
  }

  const ConfigEntry* find(const std::string& key) const {
    if (entries_ == nullptr) return nullptr;
    auto it = entries_->find(key);
    return it == entries_->end() ? nullptr : &it->second;
  }

  double number(const std::string& key, double fallback) const {
    const ConfigEntry* e = find(key);
    return e ? parse_number(*e, key) : fallback;
  }

  long long integer(const std::string& key, long long fallback) const {
    const ConfigEntry* e = find(key);
    if (!e) return fallback;
    long long v = 0;
    const auto* first = e->value.data();
    const auto* last = first + e->value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(*e, key, "expected an integer");
    return v;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    const ConfigEntry* e = find(key);
    if (!e) return fallback;
    std::uint64_t v = 0;
    const auto* first = e->value.data();
    const auto* last = first + e->value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(*e, key, "expected a non-negative integer");
    return v;
  }

  bool boolean(const std::string& key, bool fallback) const {
    const ConfigEntry* e = find(key);
    if (!e) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(*e, key, "expected true or false");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const ConfigEntry* e = find(key);
    return e ? e->value : fallback;
  }

  std::vector<double> numbers(const std::string& key, std::vector<std::size_t> allowed_sizes) const {
    const ConfigEntry* e = find(key);
    std::vector<double> out;
    std::string_view rest = e->value;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      ConfigEntry part = *e;
      part.value = std::string(item);
      out.push_back(parse_number(part, key));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (std::find(allowed_sizes.begin(), allowed_sizes.end(), out.size()) == allowed_sizes.end()) {
      fail(*e, key, "wrong number of components (" + std::to_string(out.size()) + ")");
    }
    return out;
  }

  RealVec3 vec3(const std::string& key, const RealVec3& fallback, bool allow_2d = false) const {
    if (!find(key)) return fallback;
    const auto v = numbers(key, allow_2d ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{3});
    return {v[0], v[1], v.size() == 3 ? v[2] : 0.0};
  }

 private:
  [[noreturn]] void fail(const ConfigEntry& e, const std::string& key, const std::string& why) const {
    throw ParseError(e.line, e.value_column, section_ + "." + key + ": " + why + " (got '" + e.value + "')");
  }

  double parse_number(const ConfigEntry& e, const std::string& key) const {
    double v = 0.0;
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) fail(e, key, "expected a number");
    if (!std::isfinite(v)) fail(e, key, "number must be finite");
    return v;
  }

  std::string section_;
  const std::map<std::string, ConfigEntry>* entries_ = nullptr;
};

std::string join(const RealVec3& v, int n = 3) {
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ", ";
    s += format_double(v(i));
  }
  return s;
}

std::string join(const Eigen::Matrix3d& m) {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i || j) s += ", ";
      s += format_double(m(i, j));
    }
  }
  return s;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Classical: return "classical";
    case Mode::Quantum: return "quantum";
    case Mode::Both: return "both";
  }
  return "classical";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

void ConfigDocument::set(std::string_view dotted_key, std::string value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string_view::npos) {
    throw ParseError(1, 1, "parameter must look like section.key: '" + std::string(dotted_key) + "'");
  }
  const std::string section(dotted_key.substr(0, dot));
  const std::string key(dotted_key.substr(dot + 1));
  const SectionSchema* s = find_section(section);
  if (s == nullptr) throw ParseError(1, 1, "unknown section '" + section + "'");
  if (!known_key(*s, key)) throw ParseError(1, 1, "unknown key '" + key + "' in section [" + section + "]");
  sections[section][key] = ConfigEntry{std::move(value), 0, 0};
}

ConfigDocument parse_document(std::string_view text) {
  ConfigDocument doc;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto hash = raw.find('#');
    std::string_view body = raw.substr(0, hash);
    const std::string_view content = trim(body);
    if (content.empty()) continue;
    const int indent = static_cast<int>(body.find_first_not_of(" \t")) + 1;

    if (content.front() == '[') {
      if (content.back() != ']') throw ParseError(line_no, indent, "unterminated section header");
      const std::string name(trim(content.substr(1, content.size() - 2)));
      if (find_section(name) == nullptr) {
        throw ParseError(line_no, indent + 1, "unknown section '" + name + "'");
      }
      if (doc.sections.count(name)) throw ParseError(line_no, indent, "duplicate section [" + name + "]");
      doc.sections[name];
      current = name;
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, indent, "expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    if (!valid_name(key)) throw ParseError(line_no, indent, "invalid key '" + key + "'");
    if (current.empty()) throw ParseError(line_no, indent, "key '" + key + "' appears before any section");
    if (!known_key(*find_section(current), key)) {
      throw ParseError(line_no, indent, "unknown key '" + key + "' in section [" + current + "]");
    }
    const std::string_view after = body.substr(eq + 1);
    const std::string_view value = trim(after);
    if (value.empty()) throw ParseError(line_no, static_cast<int>(eq) + 2, "missing value for '" + key + "'");
    const int value_col = static_cast<int>(eq + 1 + after.find_first_not_of(" \t")) + 1;
    auto& sec = doc.sections[current];
    if (sec.count(key)) throw ParseError(line_no, indent, "duplicate key '" + key + "'");
    sec[key] = ConfigEntry{std::string(value), line_no, value_col};
  }
  return doc;
}

Scenario build_scenario(const ConfigDocument& doc) {
  Scenario s;

  const Reader integ(doc, "integration");
  const std::string mode = integ.text("mode", "classical");
  if (mode == "classical") {
    s.mode = Mode::Classical;
  } else if (mode == "quantum") {
    s.mode = Mode::Quantum;
  } else if (mode == "both") {
    s.mode = Mode::Both;
  } else {
    throw ValidationError("integration.mode", "must be classical, quantum or both");
  }
  s.dt = integ.number("dt", s.dt);
  const long long n_steps = integ.integer("n_steps", s.n_steps);
  const long long sample_every = integ.integer("sample_every", s.sample_every);
  s.fd_step = integ.number("fd_step", s.fd_step);
  s.seed = integ.unsigned_integer("seed", s.seed);
  if (!(s.dt > 0.0)) throw ValidationError("integration.dt", "must be positive");
  if (n_steps < 0 || n_steps > 100'000'000) throw ValidationError("integration.n_steps", "must be in [0, 1e8]");
  if (sample_every < 1 || sample_every > 100'000'000) {
    throw ValidationError("integration.sample_every", "must be at least 1");
  }
  if (!std::isfinite(s.dt * static_cast<double>(n_steps))) {
    throw ValidationError("integration.dt", "dt * n_steps must be finite");
  }
  if (s.fd_step < kMinStep) throw ValidationError("integration.fd_step", "must be at least 1e-12");
  s.n_steps = static_cast<int>(n_steps);
  s.sample_every = static_cast<int>(sample_every);

  const Reader units(doc, "units");
  s.units.hbar = units.number("hbar", 1.0);
  s.units.e_charge = units.number("e", 1.0);
  s.units.mass = units.number("m", 1.0);
  s.units.G = units.number("G", 0.0);
  s.units.validate();

  const Reader field(doc, "field");
  const std::string kind = field.text("kind", "uniform");
  s.field.E0 = field.vec3("E0", RealVec3::Zero());
  if (field.find("gradient")) {
    const auto g = field.numbers("gradient", {9});
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s.field.gradient(i, j) = g[static_cast<std::size_t>(3 * i + j)];
    }
  }
  if (kind == "uniform") {
    s.field.kind = EFieldSpec::Kind::Uniform;
    if (!s.field.gradient.isZero(0.0)) {
      throw ValidationError("field.gradient", "must be zero (or absent) for a uniform field");
    }
  } else if (kind == "linear") {
    s.field.kind = EFieldSpec::Kind::LinearGradient;
  } else {
    throw ValidationError("field.kind", "must be uniform or linear");
  }

  const Reader out(doc, "output");
  s.outputs.prefix = out.text("prefix", s.outputs.prefix);
  s.outputs.trajectory_csv = out.boolean("trajectory_csv", s.outputs.trajectory_csv);
  s.outputs.observables_csv = out.boolean("observables_csv", s.outputs.observables_csv);
  s.outputs.summary_json = out.boolean("summary_json", s.outputs.summary_json);
  s.outputs.svg = out.boolean("svg", s.outputs.svg);
  const bool safe_prefix = !s.outputs.prefix.empty() &&
                           std::all_of(s.outputs.prefix.begin(), s.outputs.prefix.end(), [](char c) {
                             return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
                           });
  if (!safe_prefix) throw ValidationError("output.prefix", "use letters, digits, '_', '-' or '.'");

  const Reader particle(doc, "particle");
  const Reader wave(doc, "wavepacket");
  const Reader grid(doc, "grid");
  if (s.mode == Mode::Classical) {
    for (const char* sec : {"wavepacket", "grid"}) {
      if (doc.has_section(sec)) {
        throw ValidationError(sec, "section not allowed in classical mode (quantum grid keys present)");
      }
    }
    s.particle.r = particle.vec3("r", RealVec3::Zero());
    s.particle.p = particle.vec3("p", RealVec3::Zero());
    s.particle.s = particle.vec3("s", RealVec3::UnitZ());
    s.confine_2d = particle.boolean("confine_2d", s.confine_2d);
    if (std::abs(s.particle.s.norm() - 1.0) > 1e-9) {
      throw ValidationError("particle.s", "Bloch vector must have unit length");
    }
  } else {
    if (doc.has_section("particle")) {
      throw ValidationError("particle", "section not allowed in " + std::string(to_string(s.mode)) +
                                            " mode; the initial state comes from [wavepacket]");
    }
    if (s.field.kind != EFieldSpec::Kind::Uniform) {
      throw ValidationError("field.kind", "quantum evolution supports uniform fields only");
    }
    s.grid.nx = static_cast<int>(grid.integer("nx", s.grid.nx));
    s.grid.ny = static_cast<int>(grid.integer("ny", s.grid.ny));
    s.grid.lx = grid.number("lx", s.grid.lx);
    s.grid.ly = grid.number("ly", s.grid.ly);
    s.grid.validate();
    s.wavepacket.center = wave.vec3("center", RealVec3::Zero(), true);
    s.wavepacket.k0 = wave.vec3("k0", RealVec3::Zero(), true);
    s.wavepacket.center.z() = 0.0;
    s.wavepacket.k0.z() = 0.0;
    s.wavepacket.width = wave.number("width", s.wavepacket.width);
    s.wavepacket.spin = wave.vec3("spin", RealVec3::UnitZ());
    if (std::abs(s.wavepacket.spin.norm() - 1.0) > 1e-9) {
      throw ValidationError("wavepacket.spin", "Bloch vector must have unit length");
    }
    try {
      s.wavepacket.check_resolvable(s.grid);
    } catch (const Error& e) {
      throw ValidationError("wavepacket.width", "unresolvable wavepacket (" + std::string(e.what()) + ")");
    }
    s.particle.r = s.wavepacket.center;
    s.particle.p = s.units.hbar * s.wavepacket.k0;
    s.particle.s = s.wavepacket.spin;
    s.confine_2d = true;
  }
  return s;
}

Scenario parse_config(std::string_view text) { return build_scenario(parse_document(text)); }

std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
resolved_entries(const Scenario& s) {
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> out;
  out.push_back({"units",
                 {{"hbar", format_double(s.units.hbar)},
                  {"e", format_double(s.units.e_charge)},
                  {"m", format_double(s.units.mass)},
                  {"G", format_double(s.units.G)}}});
  out.push_back({"field",
                 {{"kind", s.field.kind == EFieldSpec::Kind::Uniform ? "uniform" : "linear"},
                  {"E0", join(s.field.E0)},
                  {"gradient", join(s.field.gradient)}}});
  if (s.mode == Mode::Classical) {
    out.push_back({"particle",
                   {{"r", join(s.particle.r)},
                    {"p", join(s.particle.p)},
                    {"s", join(s.particle.s)},
                    {"confine_2d", bool_text(s.confine_2d)}}});
  } else {
    out.push_back({"wavepacket",
                   {{"center", join(s.wavepacket.center, 2)},
                    {"k0", join(s.wavepacket.k0, 2)},
                    {"width", format_double(s.wavepacket.width)},
                    {"spin", join(s.wavepacket.spin)}}});
    out.push_back({"grid",
                   {{"nx", std::to_string(s.grid.nx)},
                    {"ny", std::to_string(s.grid.ny)},
                    {"lx", format_double(s.grid.lx)},
                    {"ly", format_double(s.grid.ly)}}});
  }
  out.push_back({"integration",
                 {{"mode", std::string(to_string(s.mode))},
                  {"dt", format_double(s.dt)},
                  {"n_steps", std::to_string(s.n_steps)},
                  {"sample_every", std::to_string(s.sample_every)},
                  {"fd_step", format_double(s.fd_step)},
                  {"seed", std::to_string(s.seed)}}});
  out.push_back({"output",
                 {{"prefix", s.outputs.prefix},
                  {"trajectory_csv", bool_text(s.outputs.trajectory_csv)},
                  {"observables_csv", bool_text(s.outputs.observables_csv)},
                  {"summary_json", bool_text(s.outputs.summary_json)},
                  {"svg", bool_text(s.outputs.svg)}}});
  return out;
}

std::string to_config_text(const Scenario& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [section, entries] : resolved_entries(s)) {
    if (!first) os << '\n';
    first = false;
    os << '[' << section << "]\n";
    for (const auto& [key, value] : entries) os << key << " = " << value << '\n';
  }
  return os.str();
}

}  // namespace spingauge
