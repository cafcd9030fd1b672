// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// values that decided it. Exit status is nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "spingauge/classical.hpp"
#include "spingauge/config.hpp"
#include "spingauge/errors.hpp"
#include "spingauge/fft2d.hpp"
#include "spingauge/gauge_field.hpp"
#include "spingauge/pauli.hpp"
#include "spingauge/precession.hpp"
#include "spingauge/scenario.hpp"
#include "spingauge/verify.hpp"
#include "spingauge/wavepacket.hpp"

using namespace spingauge;
namespace fs = std::filesystem;

namespace {

const Complex I{0.0, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Accumulates sub-conditions and a human-readable list of measurements.
class Measure {
 public:
  void require(const std::string& what, double value, double limit, bool at_least = false) {
    const bool ok = std::isfinite(value) && (at_least ? value >= limit : value <= limit);
    pass_ = pass_ && ok;
    add(what + "=" + sci(value) + (at_least ? " (>= " : " (<= ") + sci(limit) + ")" + (ok ? "" : " VIOLATED"));
  }
  void require(const std::string& what, bool ok) {
    pass_ = pass_ && ok;
    add(what + (ok ? " ok" : " VIOLATED"));
  }
  void report(const std::string& what, double value) { add(what + "=" + sci(value)); }
  void note(const std::string& text) { add(text); }
  Outcome outcome() const { return {pass_, detail_}; }

 private:
  void add(const std::string& s) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += s;
  }
  bool pass_ = true;
  std::string detail_;
};

// ------------------------------------------------------------------ oracles

Eigen::Matrix2cd dense_sigma(int axis) {
  Eigen::Matrix2cd m;
  if (axis == 0) m << 0, 1, 1, 0;
  if (axis == 1) m << 0, -I, I, 0;
  if (axis == 2) m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd dense(const PauliOp& a) {
  return a.c0 * Eigen::Matrix2cd::Identity() + a.cx * dense_sigma(0) + a.cy * dense_sigma(1) + a.cz * dense_sigma(2);
}

double max_diff(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

UnitSystem coupling(double G) {
  UnitSystem u;
  u.G = G;
  return u;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SPINGAUGE_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Scenario reference_scenario() { return parse_config(slurp(fs::path(SPINGAUGE_CONFIG_DIR) / "reference_both.ini")); }

// ------------------------------------------------------------------ criteria

Outcome pauli_algebra() {
  Stopwatch clock;
  Measure m;
  const OpVec3 s = OpVec3::sigma();
  const OpVec3 cross = op_cross(s, s);
  double sigma_err = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const Eigen::Matrix2cd oracle = dense_sigma(j) * dense_sigma(k) - dense_sigma(k) * dense_sigma(j);
    sigma_err = std::max({sigma_err, max_diff(dense(cross[i]), oracle), max_diff(oracle, 2.0 * I * dense_sigma(i))});
  }
  double anti = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Eigen::Matrix2cd expected = (i == j ? 2.0 : 0.0) * Eigen::Matrix2cd::Identity();
      anti = std::max(anti, max_diff(dense(anticommutator(PauliOp::sigma(i), PauliOp::sigma(j))), expected));
    }
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  auto op = [&] { return PauliOp(Complex(d(rng), d(rng)), Complex(d(rng), d(rng)), Complex(d(rng), d(rng)), Complex(d(rng), d(rng))); };
  double products = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const PauliOp a = op(), b = op();
    products = std::max(products, max_diff(dense(a * b), dense(a) * dense(b)));
    products = std::max(products, max_diff(dense(commutator(a, b)), dense(a) * dense(b) - dense(b) * dense(a)));
  }
  m.require("sigma_x_sigma", sigma_err, 1e-13);
  m.require("anticommutation", anti, 1e-13);
  m.require("1000_products", products, 1e-13);
  m.require("runtime_s", clock.seconds(), 1.0);
  return m.outcome();
}

Outcome spin_transverse_force() {
  Stopwatch clock;
  Measure m;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    UnitSystem u;
    u.G = 0.05 + std::abs(d(rng));
    u.mass = 0.5 + std::abs(d(rng));
    u.hbar = 0.5 + std::abs(d(rng));
    u.e_charge = 0.5 + std::abs(d(rng));
    const EFieldSpec E = EFieldSpec::uniform({d(rng), d(rng), d(rng)});
    const ParticleState st{{d(rng), d(rng), d(rng)}, {d(rng), d(rng), d(rng)},
                           RealVec3(n(rng), n(rng), n(rng)).normalized(), 0};
    const RealVec3 a = force_f2(st, E, u), b = force_f2_closed_form(st, E, u);
    worst = std::max(worst, (a - b).norm() / b.norm());
  }
  m.require("max_relative_error_1000_cases", worst, 1e-11);
  m.require("runtime_s", clock.seconds(), 1.0);
  return m.outcome();
}

Outcome k_space_curl() {
  Stopwatch clock;
  Measure m;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst = 0.0;
  int evaluations = 0;
  for (const UnitSystem& u : {coupling(0.02), coupling(0.5), UnitSystem{0.7, 1.3, 1.9, 0.45}}) {
    const OpVec3 expected = OpVec3::sigma() * (2.0 * u.hbar * u.G / u.mass);
    for (int k = 0; k < 100; ++k) {
      const RealVec3 p(d(rng), d(rng), d(rng));
      for (double h = 1e-1; h >= 1e-4; h /= 2) {
        worst = std::max(worst, distance(curl_k(GaugeFieldK(u), p, h), expected));
        ++evaluations;
      }
    }
  }
  m.require("max_deviation_over_h_in_[1e-4,1e-1]", worst, 1e-12);
  m.report("evaluations", evaluations);
  m.require("runtime_s", clock.seconds(), 1.0);
  return m.outcome();
}

Outcome cross_self_prefactor() {
  Measure m;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    UnitSystem u;
    u.G = std::abs(d(rng));
    u.mass = 0.5 + std::abs(d(rng));
    const RealVec3 p(d(rng), d(rng), d(rng));
    const double g2 = (u.G / u.mass) * (u.G / u.mass);
    OpVec3 expected;
    for (int i = 0; i < 3; ++i) expected[i] = sigma_dot(p) * (2.0 * I * g2 * p(i));
    const OpVec3 got = cross_self_k(p, u);
    worst = std::max(worst, distance(got, expected) / std::max(1.0, expected.max_abs()));
  }
  m.require("max_deviation_from_2i(G/m)^2(sigma.p)p", worst, 1e-12);

  const RunReport rep = run_verify({});
  bool present = false;
  for (const Check& c : rep.checks) {
    if (c.name == "printed_form.A_k_cross_A_k") {
      present = c.status == CheckStatus::Info && c.note.find("published") != std::string::npos && c.max_error > 0.0;
      m.report("flagged_deviation_of_published_form", c.max_error);
    }
  }
  m.require("verify_report_flags_published_form_as_info", present);
  return m.outcome();
}

Outcome pure_gauge_flatness() {
  Stopwatch clock;
  Measure m;
  const std::array<LambdaField, 3> fields{
      [](const RealVec3& r) { return RealVec3(0.4 * std::cos(r.z()), 0.3 * r.x() * r.y(), 0.2 * std::sin(r.x() - r.y())); },
      [](const RealVec3& r) { return RealVec3(0.25 * std::exp(-r.squaredNorm()), 0.1 * r.z() * r.z(), 0.3 * r.y()); },
      [](const RealVec3& r) { return RealVec3(0.6 * r.cross(RealVec3(0.1, 0.3, -1.0))); }};
  const RealVec3 r0(-0.2, 0.35, 0.1);
  double worst_order = 1e9, worst_final = 0.0;
  for (const auto& f : fields) {
    std::vector<double> steps, res;
    for (int k = 0; k <= 7; ++k) {
      steps.push_back(0.05 / std::ldexp(1.0, k));
      res.push_back(pure_gauge_curvature_check(f, r0, steps.back()));
    }
    worst_order = std::min(worst_order, loglog_slope(steps, res));
    worst_final = std::max(worst_final, res.back());
  }
  m.require("worst_observed_order", worst_order, 1.9, true);
  m.require("worst_final_residual", worst_final, 1e-8);
  m.require("runtime_s", clock.seconds(), 10.0);
  return m.outcome();
}

Outcome no_precession() {
  Measure m;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  const UnitSystem u = coupling(0.3);
  double bits = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const EFieldSpec E = EFieldSpec::uniform({d(rng), d(rng), d(rng)});
    const RealVec3 r(d(rng), d(rng), d(rng));
    bits = std::max(bits, distance(no_precession_limit(E, u, r), build_gauge_r(E, u, r)));
  }
  m.require("pointwise_difference", bits, 1e-15);

  const RealVec3 E0(-0.2, 0.5, 1.0);
  std::vector<double> eps, err;
  for (double s : {1e-1, 1e-2, 1e-3}) {
    const LambdaField lam = [&, s](const RealVec3& r) { return RealVec3(s * u.G * r.cross(E0)); };
    const OpVec3 a = pure_gauge_field(lam, RealVec3(0.4, 0.9, -0.3), 1e-5).sigma_part * (I / s);
    eps.push_back(s);
    err.push_back(distance(a, no_precession_limit(EFieldSpec::uniform(E0), u, RealVec3::Zero())));
  }
  m.require("epsilon_scaling_slope", loglog_slope(eps, err), 0.9, true);
  m.report("deviation_at_eps_1e-3", err.back());
  return m.outcome();
}

Outcome heisenberg_agreement() {
  Stopwatch clock;
  Measure m;
  std::mt19937_64 rng(19);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix3d grad;
  grad << 0.1, -0.05, 0.2, 0.0, 0.15, -0.1, 0.3, 0.05, -0.25;
  double worst_uniform = 0.0, worst_linear = 0.0;
  for (int k = 0; k < 500; ++k) {
    const UnitSystem u = coupling(0.05 + 0.3 * std::abs(n(rng)));
    const RealVec3 E0(n(rng), n(rng), n(rng));
    const ParticleState st{{n(rng), n(rng), n(rng)}, {n(rng), n(rng), n(rng)},
                           RealVec3(n(rng), n(rng), n(rng)).normalized(), 0};
    for (const bool linear : {false, true}) {
      const EFieldSpec E = linear ? EFieldSpec::linear(E0, grad) : EFieldSpec::uniform(E0);
      const ForceBreakdown h = heisenberg_force(st, E, u).breakdown;
      const double e = std::max((h.f1 - force_f1(st, E, u)).norm(), (h.f2 - force_f2(st, E, u)).norm());
      (linear ? worst_linear : worst_uniform) = std::max(linear ? worst_linear : worst_uniform, e);
    }
  }
  m.require("uniform_field", worst_uniform, 1e-10);
  m.require("linear_gradient_field", worst_linear, 1e-10);
  m.require("runtime_s", clock.seconds(), 5.0);
  return m.outcome();
}

Outcome classical_quantum_consistency() {
  Stopwatch clock;
  Measure m;
  const Scenario s = reference_scenario();
  const EhrenfestSeries e = ehrenfest_series(s.wavepacket, s.grid, s.field, s.units, s.dt, s.n_steps, s.sample_every);
  m.require("velocity_law_residual", e.report.velocity_residual, 1e-3);
  m.require("momentum_law_residual", e.report.momentum_residual, 1e-3);
  m.require("trajectory_deviation/width", e.report.trajectory_deviation_over_width, 1e-2);
  m.report("canonical_momentum_residual", e.report.canonical_momentum_residual);
  m.report("karplus_velocity_residual", e.report.karplus_velocity_residual);
  m.report("dropped_(eA)^2/2m", e.report.dropped_energy_term);
  m.report("max_norm_drift", e.report.max_norm_drift);
  m.require("no_boundary_contamination", !e.report.boundary_contamination);
  m.require("runtime_s", clock.seconds(), 120.0);
  return m.outcome();
}

Outcome spin_hall_antisymmetry() {
  Stopwatch clock;
  Measure m;
  const Scenario s = reference_scenario();
  auto pair = [&](double G) {
    UnitSystem u = s.units;
    u.G = G;
    WavepacketSpec up = s.wavepacket, down = s.wavepacket;
    up.spin = RealVec3::UnitZ();
    down.spin = -RealVec3::UnitZ();
    return std::pair{run_quantum(up, s.grid, s.field, u, s.dt, s.n_steps, s.sample_every),
                     run_quantum(down, s.grid, s.field, u, s.dt, s.n_steps, s.sample_every)};
  };
  const auto [up, down] = pair(s.units.G);
  const double y_up = up.records.back().mean_r.y(), y_down = down.records.back().mean_r.y();
  const double sep = spinhall_separation(up, down);
  m.report("separation", sep);
  m.require("|y_up + y_down|/|separation|", std::abs(y_up + y_down) / std::abs(sep), 1e-6);
  m.require("separation_reverses_with_spin_order",
            std::abs(spinhall_separation(down, up) + sep) <= 1e-6 * std::abs(sep));

  const auto [up0, down0] = pair(0.0);
  m.require("|separation|_at_G=0", std::abs(spinhall_separation(up0, down0)), 1e-8);

  // Reference value from the classical f2 integration of one spin.
  ParticleState init;
  init.r = {s.wavepacket.center.x(), s.wavepacket.center.y(), 0.0};
  init.p = s.units.hbar * RealVec3(s.wavepacket.k0.x(), s.wavepacket.k0.y(), 0.0);
  init.s = RealVec3::UnitZ();
  TrajectoryOptions opts;
  opts.confine_2d = true;
  const TrajectorySeries c = integrate_trajectory(init, s.field, s.units, s.dt, s.n_steps, opts);
  const double drift = c.states.back().r.y() - init.r.y();
  m.require("|separation/(2*classical_drift) - 1|", std::abs(sep / (2.0 * drift) - 1.0), 0.05);
  m.require("runtime_s", clock.seconds(), 240.0);
  return m.outcome();
}

Outcome integrator_orders() {
  Measure m;
  // Classical RK4 in a gradient field, so f1 and f2 both act.
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
  grad(2, 0) = 0.05;
  grad(2, 1) = -0.03;
  const EFieldSpec lin = EFieldSpec::linear({0.1, 0, 1}, grad);
  const UnitSystem u = coupling(0.3);
  const ParticleState st{{0.2, -0.1, 0}, {1.5, 0.4, 0}, RealVec3(1, 1, 1).normalized(), 0};
  const double T = 4.0;
  const ParticleState ref = integrate_trajectory(st, lin, u, T / 1280, 1280).states.back();
  std::vector<double> h, err;
  for (int n : {40, 80, 160}) {
    const ParticleState end = integrate_trajectory(st, lin, u, T / n, n).states.back();
    h.push_back(T / n);
    err.push_back(std::max({(end.r - ref.r).norm(), (end.p - ref.p).norm(), (end.s - ref.s).norm()}));
  }
  m.require("rk4_observed_order", loglog_slope(h, err), 3.8, true);

  // Split-step with an in-plane field, on the wavefunction itself.
  Grid2D g;
  g.nx = g.ny = 64;
  g.lx = g.ly = 64.0;
  WavepacketSpec w;
  w.center = {-3, 2, 0};
  w.k0 = {1, 0.5, 0};
  w.width = 5.0;
  w.spin = RealVec3(1, 0, 1).normalized();
  const EFieldSpec E = EFieldSpec::uniform({0.1, -0.05, 1.0});
  const SpinorField psi0 = init_gaussian(w, g);
  const double Tq = 2.0;
  const SpinorField qref = split_step_evolve(psi0, E, u, Tq / 1280, 1280);
  const double cell = g.dx() * g.dy();
  std::vector<double> hq, eq;
  for (int n : {20, 40, 80}) {
    const SpinorField q = split_step_evolve(psi0, E, u, Tq / n, n);
    hq.push_back(Tq / n);
    eq.push_back(std::sqrt(((q.up - qref.up).abs2().sum() + (q.down - qref.down).abs2().sum()) * cell));
  }
  m.require("split_step_observed_order", loglog_slope(hq, eq), 1.9, true);

  Fft2d fft(256, 256);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexGrid a(256, 256);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Complex(n(rng), n(rng));
  ComplexGrid b = a;
  fft.forward(b);
  fft.inverse(b);
  m.require("fft_round_trip_256x256", (a - b).abs().maxCoeff(), 1e-13);
  return m.outcome();
}

Outcome determinism_and_interface() {
  Measure m;
  const fs::path root = fs::temp_directory_path() / "spingauge_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path configs(SPINGAUGE_CONFIG_DIR);

  // Repeated CLI runs give byte-identical files.
  bool identical = true;
  int files = 0;
  for (const char* name : {"classical.ini", "gradient.ini", "reference_both.ini"}) {
    for (const char* run : {"a", "b"}) {
      const fs::path out = root / run / name;
      if (cli("run \"" + (configs / name).string() + "\" --out \"" + out.string() + "\"") != 0) identical = false;
    }
    for (const auto& entry : fs::directory_iterator(root / "a" / name)) {
      ++files;
      const fs::path other = root / "b" / name / entry.path().filename();
      identical = identical && fs::exists(other) && slurp(entry.path()) == slurp(other);
    }
  }
  m.require("byte_identical_reruns(" + std::to_string(files) + "_files)", identical && files >= 9);

  // Exit-code contract.
  std::ofstream(root / "parse.ini") << "[units]\ngravit = 1\n";
  std::ofstream(root / "invalid.ini") << slurp(configs / "classical.ini") << "[grid]\nnx = 64\n";
  const std::string out = " --out \"" + (root / "x").string() + "\"";
  const std::vector<std::pair<std::string, int>> expected{
      {"verify", 0},
      {"verify --seed 3 --cases 200", 0},
      {"verify --reverse-cross-order", 1},
      {"verify --bogus", 2},
      {"run \"" + (root / "parse.ini").string() + "\"" + out, exit_code(ErrorKind::ParseError)},
      {"run \"" + (root / "invalid.ini").string() + "\"" + out, exit_code(ErrorKind::ValidationError)},
      {"run \"" + (root / "missing.ini").string() + "\"" + out, exit_code(ErrorKind::IoError)},
  };
  bool codes = true;
  std::string got;
  for (const auto& [args, code] : expected) {
    const int c = cli(args);
    codes = codes && c == code;
    got += (got.empty() ? "" : ",") + std::to_string(c);
  }
  m.require("exit_codes[" + got + "]", codes);

  // The JSON echo alone reproduces the scenario, defaults included.
  bool echo = true;
  for (const char* name : {"classical.ini", "gradient.ini", "reference_both.ini"}) {
    const Scenario s = parse_config(slurp(configs / name));
    const auto j = nlohmann::json::parse(slurp(root / "a" / name / (s.outputs.prefix + "_summary.json")));
    std::string text;
    std::size_t keys = 0;
    for (const auto& [section, entries] : j["config"].items()) {
      text += "[" + section + "]\n";
      for (const auto& [key, value] : entries.items()) {
        text += key + " = " + value.get<std::string>() + "\n";
        ++keys;
      }
    }
    std::size_t expected_keys = 0;
    for (const auto& [section, entries] : resolved_entries(s)) expected_keys += entries.size();
    echo = echo && keys == expected_keys && to_config_text(parse_config(text)) == to_config_text(s) &&
           j["digest"] == scenario_digest(s);
  }
  m.require("config_echo_round_trip", echo);
  fs::remove_all(root);
  return m.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Pauli algebra exactness", pauli_algebra},
      {"spin-transverse force identity", spin_transverse_force},
      {"k-space curl", k_space_curl},
      {"brute-force A_k x A_k prefactor", cross_self_prefactor},
      {"pure-gauge flatness", pure_gauge_flatness},
      {"no-precession coincidence", no_precession},
      {"Heisenberg-classical force agreement", heisenberg_agreement},
      {"classical-quantum consistency", classical_quantum_consistency},
      {"spin-Hall antisymmetry", spin_hall_antisymmetry},
      {"integrator orders", integrator_orders},
      {"determinism and interface", determinism_and_interface},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Stopwatch clock;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s [%.2f s] -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                clock.seconds(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
