#include "spingauge/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "spingauge/config.hpp"

namespace spingauge {

namespace {

using ordered_json = nlohmann::ordered_json;

void append_fields(std::string& line, std::initializer_list<double> values) {
  for (double v : values) {
    line += ',';
    line += format_double(v);
  }
}

ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

struct Polyline {
  std::string label;
  std::string colour;
  std::vector<std::pair<double, double>> points;
};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Info: return "info";
  }
  return "info";
}

Check& RunReport::expect(std::string name, double max_error, double tolerance, std::string note) {
  const bool ok = std::isfinite(max_error) && max_error <= tolerance;
  checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, max_error, tolerance,
                    std::move(note)});
  return checks.back();
}

Check& RunReport::info(std::string name, double value, std::string note) {
  checks.push_back({std::move(name), CheckStatus::Info, value, 0.0, std::move(note)});
  return checks.back();
}

bool RunReport::passed() const { return count(CheckStatus::Fail) == 0; }

std::size_t RunReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == status; }));
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_trajectory_csv(const TrajectorySeries& series) {
  std::string out(kTrajectoryCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < series.states.size(); ++i) {
    const ParticleState& s = series.states[i];
    const ForceBreakdown f = i < series.forces.size() ? series.forces[i] : ForceBreakdown{};
    std::string line = format_double(s.t);
    append_fields(line, {s.r.x(), s.r.y(), s.r.z(), s.p.x(), s.p.y(), s.p.z(), s.s.x(), s.s.y(), s.s.z(),
                         f.f1.x(), f.f1.y(), f.f1.z(), f.f2.x(), f.f2.y(), f.f2.z()});
    out += line;
    out += '\n';
  }
  return out;
}

std::string format_observables_csv(const std::vector<ObservableRecord>& records) {
  std::string out(kObservablesCsvHeader);
  out += '\n';
  for (const ObservableRecord& r : records) {
    std::string line = format_double(r.t);
    append_fields(line, {r.norm, r.mean_r.x(), r.mean_r.y(), r.mean_p.x(), r.mean_p.y(), r.mean_sigma.x(),
                         r.mean_sigma.y(), r.mean_sigma.z(), r.y_centroid_up, r.y_centroid_down});
    out += line;
    out += '\n';
  }
  return out;
}

std::string format_summary_json(const RunReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "spingauge";
  j["version"] = std::string(kVersion);
  j["kind"] = report.kind;
  j["digest"] = report.digest;

  ordered_json config = ordered_json::object();
  for (const auto& [section, entries] : report.config) {
    ordered_json sec = ordered_json::object();
    for (const auto& [key, value] : entries) sec[key] = value;
    config[section] = std::move(sec);
  }
  j["config"] = std::move(config);

  ordered_json checks = ordered_json::array();
  for (const Check& c : report.checks) {
    ordered_json item;
    item["name"] = c.name;
    item["status"] = std::string(to_string(c.status));
    item["max_error"] = number_or_null(c.max_error);
    item["tolerance"] = number_or_null(c.tolerance);
    if (!c.note.empty()) item["note"] = c.note;
    checks.push_back(std::move(item));
  }
  j["checks"] = std::move(checks);

  ordered_json metrics = ordered_json::object();
  for (const auto& [section, values] : report.metrics) {
    ordered_json sec = ordered_json::object();
    for (const auto& [name, v] : values) sec[name] = number_or_null(v);
    metrics[section] = std::move(sec);
  }
  j["metrics"] = std::move(metrics);
  j["notes"] = report.notes;
  j["counts"] = {{"pass", report.count(CheckStatus::Pass)},
                 {"fail", report.count(CheckStatus::Fail)},
                 {"info", report.count(CheckStatus::Info)}};
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

std::string format_svg(const TrajectorySeries* classical, const std::vector<ObservableRecord>* quantum) {
  std::vector<Polyline> lines;
  if (classical != nullptr && !classical->states.empty()) {
    Polyline p{"classical (rx, ry)", "#1f77b4", {}};
    for (const ParticleState& s : classical->states) p.points.emplace_back(s.r.x(), s.r.y());
    lines.push_back(std::move(p));
  }
  if (quantum != nullptr && !quantum->empty()) {
    Polyline mean{"quantum <r>", "#d62728", {}};
    Polyline up{"spin-up y-centroid", "#2ca02c", {}};
    Polyline down{"spin-down y-centroid", "#9467bd", {}};
    for (const ObservableRecord& r : *quantum) {
      mean.points.emplace_back(r.mean_r.x(), r.mean_r.y());
      if (std::isfinite(r.y_centroid_up)) up.points.emplace_back(r.mean_r.x(), r.y_centroid_up);
      if (std::isfinite(r.y_centroid_down)) down.points.emplace_back(r.mean_r.x(), r.y_centroid_down);
    }
    for (Polyline* p : {&mean, &up, &down}) {
      if (!p->points.empty()) lines.push_back(std::move(*p));
    }
  }

  constexpr double width = 640.0, height = 480.0, margin = 60.0;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Polyline& l : lines) {
    for (const auto& [x, y] : l.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  const auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  const auto sy = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  os << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
     << height - margin << "\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
     << "\"/>\n";
  os << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"320\" y=\"" << height - 15 << "\" text-anchor=\"middle\">x</text>\n";
  os << "<text x=\"15\" y=\"240\" text-anchor=\"middle\">y</text>\n";
  os << "<text x=\"" << margin << "\" y=\"" << height - margin + 16 << "\">" << label_number(xmin) << "</text>\n";
  os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16 << "\" text-anchor=\"end\">"
     << label_number(xmax) << "</text>\n";
  os << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin << "\" text-anchor=\"end\">"
     << label_number(ymin) << "</text>\n";
  os << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 4 << "\" text-anchor=\"end\">" << label_number(ymax)
     << "</text>\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    os << "<text x=\"" << width - margin - 150 << "\" y=\"" << 20 + 16 * static_cast<int>(i) << "\" fill=\""
       << lines[i].colour << "\">" << (lines[i].label == "quantum <r>" ? "quantum &lt;r&gt;" : lines[i].label)
       << "</text>\n";
  }
  os << "</g>\n";
  for (const Polyline& l : lines) {
    os << "<polyline fill=\"none\" stroke=\"" << l.colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < l.points.size(); ++i) {
      if (i) os << ' ';
      os << fixed(sx(l.points[i].first)) << ',' << fixed(sy(l.points[i].second));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

std::string format_check_lines(const RunReport& report) {
  std::ostringstream os;
  for (const Check& c : report.checks) {
    std::string status(to_string(c.status));
    std::transform(status.begin(), status.end(), status.begin(), [](char ch) { return static_cast<char>(std::toupper(ch)); });
    char err[32];
    std::snprintf(err, sizeof err, "%.3e", c.max_error);
    os << '[' << status << "] " << c.name << "  value=" << err;
    if (c.status != CheckStatus::Info) {
      char tol[32];
      std::snprintf(tol, sizeof tol, "%.1e", c.tolerance);
      os << " tol=" << tol;
    }
    if (!c.note.empty()) os << "  (" << c.note << ')';
    os << '\n';
  }
  return os.str();
}

}  // namespace spingauge
