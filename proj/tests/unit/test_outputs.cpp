#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spingauge/errors.hpp"
#include "spingauge/outputs.hpp"

using namespace spingauge;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto comma = line.find(',', pos);
    const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double v = 0.0;
    if (cell == "nan") {
      v = std::numeric_limits<double>::quiet_NaN();
    } else {
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      REQUIRE(ec == std::errc());
      REQUIRE(ptr == cell.data() + cell.size());
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

TrajectorySeries three_samples() {
  TrajectorySeries t;
  for (int i = 0; i < 3; ++i) {
    ParticleState s;
    s.t = 0.1 * i;
    s.r = {1.0 / 3.0 + i, -2e-9 * i, 0.0};
    s.p = {2.0, 0.25 * i, 0.0};
    s.s = RealVec3(1, 2, 2).normalized();
    ForceBreakdown f;
    f.f2 = {0.0, -8e-4 * (i + 1), 0.0};
    t.states.push_back(s);
    t.forces.push_back(f);
  }
  return t;
}

}  // namespace

TEST_CASE("empty series give header-only CSV files") {
  CHECK(format_trajectory_csv({}) == std::string(kTrajectoryCsvHeader) + "\n");
  CHECK(format_observables_csv({}) == std::string(kObservablesCsvHeader) + "\n");
}

TEST_CASE("trajectory CSV values round-trip exactly") {
  const TrajectorySeries t = three_samples();
  const auto lines = lines_of(format_trajectory_csv(t));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == kTrajectoryCsvHeader);
  for (int i = 0; i < 3; ++i) {
    const auto row = parse_row(lines[i + 1]);
    REQUIRE(row.size() == 16);
    const ParticleState& s = t.states[i];
    CHECK(row[0] == s.t);
    CHECK(row[1] == s.r.x());
    CHECK(row[2] == s.r.y());
    CHECK(row[5] == s.p.y());
    CHECK(row[7] == s.s.x());
    CHECK(row[9] == s.s.z());
    CHECK(row[14] == t.forces[i].f2.y());
  }
}

TEST_CASE("observables CSV writes nan for an empty spin channel") {
  ObservableRecord r;
  r.t = 0.5;
  r.norm = 1.0;
  r.mean_r = {-10, 0.125, 0};
  r.y_centroid_up = 0.125;
  r.y_centroid_down = std::numeric_limits<double>::quiet_NaN();
  const auto lines = lines_of(format_observables_csv({r}));
  REQUIRE(lines.size() == 2);
  const auto row = parse_row(lines[1]);
  REQUIRE(row.size() == 11);
  CHECK(row[2] == -10.0);
  CHECK(row[9] == 0.125);
  CHECK(std::isnan(row[10]));
}

TEST_CASE("run report statuses") {
  RunReport r;
  CHECK(r.passed());
  r.expect("a", 1e-12, 1e-10);
  r.expect("b", std::numeric_limits<double>::quiet_NaN(), 1.0);
  r.info("c", -2.0, "published");
  CHECK(r.count(CheckStatus::Pass) == 1);
  CHECK(r.count(CheckStatus::Fail) == 1);
  CHECK(r.count(CheckStatus::Info) == 1);
  CHECK_FALSE(r.passed());
  const std::string text = format_check_lines(r);
  CHECK(text.find("[PASS] a") != std::string::npos);
  CHECK(text.find("[FAIL] b") != std::string::npos);
  CHECK(text.find("[INFO] c") != std::string::npos);
}

TEST_CASE("summary JSON is versioned and parses back") {
  RunReport r;
  r.digest = fnv1a_hex("abc");
  r.config = {{"units", {{"G", "0.02"}}}};
  r.expect("x", 0.5, 1.0, "note");
  r.info("y", std::numeric_limits<double>::infinity(), "published");
  r.metrics["ehrenfest"]["velocity_residual"] = 3e-8;
  r.seconds = 123.0;
  const auto j = nlohmann::json::parse(format_summary_json(r));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["version"] == std::string(kVersion));
  CHECK(j["digest"] == r.digest);
  CHECK(j["config"]["units"]["G"] == "0.02");
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][1]["max_error"].is_null());
  CHECK(j["metrics"]["ehrenfest"]["velocity_residual"] == 3e-8);
  CHECK(j["passed"] == true);
  CHECK(format_summary_json(r).find("123") == std::string::npos);

  const auto empty = nlohmann::json::parse(format_summary_json(RunReport{}));
  CHECK(empty["checks"].empty());
  CHECK(empty["counts"]["fail"] == 0);
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("SVG contains one polyline per series") {
  const TrajectorySeries t = three_samples();
  const std::string svg = format_svg(&t, nullptr);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  ObservableRecord r;
  r.y_centroid_down = std::numeric_limits<double>::quiet_NaN();
  const std::vector<ObservableRecord> q{r};
  const std::string both = format_svg(&t, &q);
  std::size_t count = 0;
  for (auto at = both.find("<polyline"); at != std::string::npos; at = both.find("<polyline", at + 1)) ++count;
  CHECK(count == 3);
  CHECK(both.find("&lt;r&gt;") != std::string::npos);
  CHECK(format_svg(nullptr, nullptr).find("<polyline") == std::string::npos);
}

TEST_CASE("file writing round-trips and reports I/O failures") {
  const auto dir = std::filesystem::temp_directory_path() / "spingauge_test_outputs";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.txt";
  write_text_file(path, "hello\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "hello");
  try {
    write_text_file(dir / "missing" / "y.txt", "z");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
    CHECK(std::string(e.what()).find("y.txt") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
