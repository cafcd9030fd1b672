#include "spingauge/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <future>
#include <thread>

#include <json.hpp>

namespace spingauge {

namespace {

TrajectorySeries thin(const TrajectorySeries& full, int every) {
  TrajectorySeries out;
  out.max_spin_drift = full.max_spin_drift;
  const std::size_t n = full.states.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(every) == 0 || i + 1 == n) {
      out.states.push_back(full.states[i]);
      if (i < full.forces.size()) out.forces.push_back(full.forces[i]);
    }
  }
  return out;
}

void add_classical_metrics(RunReport& rep, const TrajectorySeries& series) {
  if (series.states.empty()) return;
  const ParticleState& a = series.states.front();
  const ParticleState& b = series.states.back();
  auto& m = rep.metrics["classical"];
  m["t_final"] = b.t;
  m["rx_final"] = b.r.x();
  m["ry_final"] = b.r.y();
  m["rz_final"] = b.r.z();
  m["px_final"] = b.p.x();
  m["py_final"] = b.p.y();
  m["pz_final"] = b.p.z();
  m["sx_final"] = b.s.x();
  m["sy_final"] = b.s.y();
  m["sz_final"] = b.s.z();
  m["transverse_drift_y"] = b.r.y() - a.r.y();
  m["max_spin_drift"] = series.max_spin_drift;
  rep.expect("classical.spin_norm_drift", series.max_spin_drift, 1e-6,
             "largest ||s| - 1| before per-step renormalization");
}

void add_quantum_metrics(RunReport& rep, const std::vector<ObservableRecord>& records, double boundary,
                         bool contaminated) {
  if (records.empty()) return;
  const ObservableRecord& b = records.back();
  double drift = 0.0;
  for (const auto& r : records) drift = std::max(drift, std::abs(r.norm - 1.0));
  auto& m = rep.metrics["quantum"];
  m["t_final"] = b.t;
  m["rx_final"] = b.mean_r.x();
  m["ry_final"] = b.mean_r.y();
  m["px_final"] = b.mean_p.x();
  m["py_final"] = b.mean_p.y();
  m["sigx_final"] = b.mean_sigma.x();
  m["sigy_final"] = b.mean_sigma.y();
  m["sigz_final"] = b.mean_sigma.z();
  m["ycu_final"] = b.y_centroid_up;
  m["ycd_final"] = b.y_centroid_down;
  m["transverse_drift_y"] = b.mean_r.y() - records.front().mean_r.y();
  m["max_norm_drift"] = drift;
  m["max_boundary_fraction"] = boundary;
  rep.expect("quantum.norm_drift", drift, 1e-8, "max |norm - 1| over samples");
  rep.info("quantum.boundary_fraction", boundary, "largest norm fraction within 5 cells of the grid edge");
  if (contaminated) {
    rep.notes.push_back("warning: boundary contamination (more than 1e-6 of the norm reached the grid edge); "
                        "enlarge the grid or shorten the run");
  }
}

void add_ehrenfest(RunReport& rep, const EhrenfestReport& e) {
  auto& m = rep.metrics["ehrenfest"];
  m["velocity_residual"] = e.velocity_residual;
  m["momentum_residual"] = e.momentum_residual;
  m["canonical_momentum_residual"] = e.canonical_momentum_residual;
  m["karplus_velocity_residual"] = e.karplus_velocity_residual;
  m["trajectory_deviation"] = e.trajectory_deviation;
  m["trajectory_deviation_over_width"] = e.trajectory_deviation_over_width;
  m["dropped_energy_term"] = e.dropped_energy_term;
  rep.expect("ehrenfest.velocity_law", e.velocity_residual, 1e-3, "d<r>/dt vs <p/m - (e/m) A_r>");
  rep.expect("ehrenfest.momentum_law", e.momentum_residual, 1e-3, "d<m v>/dt vs f_ext + f1 + f2");
  rep.expect("ehrenfest.trajectory_tracking", e.trajectory_deviation_over_width, 1e-2,
             "|<r> - r_classical| / packet width");
  rep.info("ehrenfest.canonical_momentum_residual", e.canonical_momentum_residual,
           "d<p>/dt vs f_ext + f1 + f2 with the canonical momentum");
  rep.info("ehrenfest.karplus_velocity_residual", e.karplus_velocity_residual,
           "d<r>/dt vs the Karplus-form velocity");
  rep.info("ehrenfest.dropped_energy_term", e.dropped_energy_term,
           "(e A_r)^2 / 2m, kept by the quantum propagator, dropped by the classical Hamiltonian");
}

void write_outputs(ScenarioResult& res, const Scenario& s, const std::filesystem::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create directory '" + dir.string() + "': " + ec.message());
  const std::string& prefix = s.outputs.prefix;
  const bool classical = s.mode != Mode::Quantum;
  const bool quantum = s.mode != Mode::Classical;
  auto emit = [&](const std::string& name, const std::string& text) {
    const auto path = dir / name;
    write_text_file(path, text);
    res.files.push_back(path);
  };
  if (classical && s.outputs.trajectory_csv) emit(prefix + "_trajectory.csv", format_trajectory_csv(res.classical));
  if (quantum && s.outputs.observables_csv) emit(prefix + "_observables.csv", format_observables_csv(res.quantum));
  if (s.outputs.svg) {
    emit(prefix + ".svg", format_svg(classical ? &res.classical : nullptr, quantum ? &res.quantum : nullptr));
  }
  if (s.outputs.summary_json) emit(prefix + "_summary.json", format_summary_json(res.report));
}

}  // namespace

std::string scenario_digest(const Scenario& s) { return fnv1a_hex(to_config_text(s)); }

ScenarioResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioResult res;
  RunReport& rep = res.report;
  rep.kind = "run";
  rep.config = resolved_entries(s);
  rep.digest = scenario_digest(s);

  if (s.mode == Mode::Classical) {
    TrajectoryOptions opts;
    opts.confine_2d = s.confine_2d;
    opts.fd_step = s.fd_step;
    const TrajectorySeries full = integrate_trajectory(s.particle, s.field, s.units, s.dt, s.n_steps, opts);
    res.classical = thin(full, s.sample_every);
    add_classical_metrics(rep, full);
  } else if (s.mode == Mode::Quantum) {
    const QuantumRun q = run_quantum(s.wavepacket, s.grid, s.field, s.units, s.dt, s.n_steps, s.sample_every);
    res.quantum = q.records;
    add_quantum_metrics(rep, res.quantum, q.diagnostics.max_boundary_fraction,
                        q.diagnostics.boundary_contamination);
  } else {
    const EhrenfestSeries e =
        ehrenfest_series(s.wavepacket, s.grid, s.field, s.units, s.dt, s.n_steps, s.sample_every);
    res.quantum = e.records;
    res.classical = thin(e.classical, s.sample_every);
    add_classical_metrics(rep, e.classical);
    add_quantum_metrics(rep, res.quantum, e.report.max_boundary_fraction, e.report.boundary_contamination);
    add_ehrenfest(rep, e.report);
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_outputs(res, s, out_dir);
  return res;
}

std::vector<SweepPoint> run_sweep(const ConfigDocument& base, const std::string& param,
                                  const std::vector<std::string>& values, const std::filesystem::path& out_dir,
                                  unsigned jobs) {
  if (values.empty()) throw ValidationError("--values", "at least one value is required");
  std::vector<Scenario> scenarios;
  std::vector<SweepPoint> points(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ConfigDocument doc = base;
    doc.set(param, values[i]);
    scenarios.push_back(build_scenario(doc));
    points[i].value = values[i];
    std::string name = param + "=" + values[i];
    std::replace_if(
        name.begin(), name.end(),
        [](char c) { return !(std::isalnum(static_cast<unsigned char>(c)) || std::string_view("._=+-").find(c) != std::string_view::npos); },
        '_');
    points[i].dir = out_dir / name;
  }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t first = 0; first < scenarios.size(); first += jobs) {
    const std::size_t last = std::min(scenarios.size(), first + jobs);
    std::vector<std::future<void>> pending;
    for (std::size_t i = first; i < last; ++i) {
      pending.push_back(std::async(std::launch::async, [&, i] {
        try {
          points[i].report = run_scenario(scenarios[i], points[i].dir).report;
        } catch (const Error& e) {
          points[i].error = e.what();
          points[i].exit_code = exit_code(e.kind());
        }
      }));
    }
    for (auto& f : pending) f.get();
  }

  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["param"] = param;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const SweepPoint& p : points) {
    nlohmann::ordered_json item;
    item["value"] = p.value;
    item["dir"] = p.dir.filename().string();
    if (p.error.empty()) {
      item["digest"] = p.report.digest;
      item["passed"] = p.report.passed();
      nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
      for (const auto& [section, vals] : p.report.metrics) {
        for (const auto& [name, v] : vals) {
          metrics[section + "." + name] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json();
        }
      }
      item["metrics"] = std::move(metrics);
    } else {
      item["error"] = p.error;
      item["exit_code"] = p.exit_code;
    }
    runs.push_back(std::move(item));
  }
  j["runs"] = std::move(runs);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create directory '" + out_dir.string() + "': " + ec.message());
  write_text_file(out_dir / "sweep_summary.json", j.dump(2) + "\n");
  return points;
}

}  // namespace spingauge
