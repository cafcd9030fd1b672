#include "spingauge/wavepacket.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace spingauge {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

double fft_wavenumber(int i, int n, double length) {
  const int m = i < n / 2 ? i : i - n;
  return 2.0 * std::numbers::pi * m / length;
}

RealVec3 in_plane(const RealVec3& v) { return {v.x(), v.y(), 0.0}; }

struct Sampled {
  std::vector<ObservableRecord> records;
  EvolutionDiagnostics diag;
};

Sampled sample_run(const WavepacketSpec& spec, const Grid2D& grid, const EFieldSpec& E,
                   const UnitSystem& u, double dt, int n_steps, int sample_every) {
  if (sample_every < 1) {
    throw ValidationError("sample_every", "must be at least 1");
  }
  if (n_steps < 0) {
    throw ValidationError("n_steps", "must be non-negative");
  }
  SpinorField psi = init_gaussian(spec, grid);
  SplitStepPropagator prop(grid, E, u, dt);
  Sampled out;
  auto record = [&](int n) {
    out.records.push_back(observables(psi, n * dt, u.hbar));
    const double b = boundary_fraction(psi);
    out.diag.max_boundary_fraction = std::max(out.diag.max_boundary_fraction, b);
  };
  record(0);
  int n = 0;
  while (n < n_steps) {
    const int chunk = std::min(sample_every, n_steps - n);
    prop.advance(psi, chunk);
    n += chunk;
    record(n);
  }
  out.diag.boundary_contamination = out.diag.max_boundary_fraction > kBoundaryWarnFraction;
  return out;
}

}  // namespace

double Grid2D::kx(int i) const { return fft_wavenumber(i, nx, lx); }
double Grid2D::ky(int j) const { return fft_wavenumber(j, ny, ly); }

void Grid2D::validate() const {
  if (!is_pow2(nx) || nx < 16) throw ValidationError("grid.nx", "must be a power of two >= 16");
  if (!is_pow2(ny) || ny < 16) throw ValidationError("grid.ny", "must be a power of two >= 16");
  if (!(lx > 0.0) || !std::isfinite(lx)) throw ValidationError("grid.lx", "must be positive");
  if (!(ly > 0.0) || !std::isfinite(ly)) throw ValidationError("grid.ly", "must be positive");
  if (!periodic) throw ValidationError("grid.periodic", "only periodic grids are supported");
}

double SpinorField::norm() const {
  return (up.abs2().sum() + down.abs2().sum()) * grid.dx() * grid.dy();
}

void WavepacketSpec::check_resolvable(const Grid2D& grid) const {
  const double cell = std::max(grid.dx(), grid.dy());
  const double extent = std::min(grid.lx, grid.ly);
  if (!(width >= 4.0 * cell) || !(width <= extent / 8.0)) {
    throw Error(ErrorKind::UnresolvableWavepacket,
                "unresolvable wavepacket: width must lie in [4 cells, extent/8] = [" +
                    std::to_string(4.0 * cell) + ", " + std::to_string(extent / 8.0) + "]");
  }
}

SpinorField init_gaussian(const WavepacketSpec& spec, const Grid2D& grid) {
  grid.validate();
  spec.check_resolvable(grid);
  if (std::abs(spec.spin.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::UnnormalizedSpin, "wavepacket spin must have unit length");
  }
  const SpinState chi = SpinState::from_bloch(spec.spin);
  SpinorField psi{grid, ComplexGrid(grid.nx, grid.ny), ComplexGrid(grid.nx, grid.ny)};
  const double inv4w2 = 1.0 / (4.0 * spec.width * spec.width);
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double dxc = x - spec.center.x(), dyc = y - spec.center.y();
      const double amp = std::exp(-(dxc * dxc + dyc * dyc) * inv4w2);
      const Complex wave = std::polar(amp, spec.k0.x() * x + spec.k0.y() * y);
      psi.up(i, j) = wave * chi.up;
      psi.down(i, j) = wave * chi.down;
    }
  }
  const double scale = 1.0 / std::sqrt(psi.norm());
  psi.up *= scale;
  psi.down *= scale;
  return psi;
}

double boundary_fraction(const SpinorField& psi, int cells) {
  const Grid2D& g = psi.grid;
  double edge = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const bool edge_row = j < cells || j >= g.ny - cells;
    for (int i = 0; i < g.nx; ++i) {
      if (edge_row || i < cells || i >= g.nx - cells) {
        edge += std::norm(psi.up(i, j)) + std::norm(psi.down(i, j));
      }
    }
  }
  return edge * g.dx() * g.dy();
}

SplitStepPropagator::SplitStepPropagator(const Grid2D& grid, const EFieldSpec& E, const UnitSystem& u,
                                         double dt)
    : grid_(grid), fft_(grid.nx, grid.ny) {
  grid.validate();
  u.validate();
  if (E.kind != EFieldSpec::Kind::Uniform || !E.is_static()) {
    throw Error(ErrorKind::UnsupportedFieldSpec, "quantum evolution supports static uniform fields only");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("dt", "must be finite and positive");
  }
  const int nx = grid.nx, ny = grid.ny;
  k00_.resize(nx, ny);
  k01_.resize(nx, ny);
  k10_.resize(nx, ny);
  k11_.resize(nx, ny);
  const OpVec3 A = build_gauge_r(E, u, RealVec3::Zero());
  const double e = u.e_charge, m = u.mass, hbar = u.hbar;
  double max_eig = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const RealVec3 p(hbar * grid.kx(i), hbar * grid.ky(j), 0.0);
      const OpVec3 pi_op = OpVec3::lift(p) - A * e;
      PauliOp K = op_dot(pi_op, pi_op) * (1.0 / (2.0 * m));
      // Drop rounding-level anti-Hermitian residue before exponentiating.
      K = {Complex(K.c0.real()), Complex(K.cx.real()), Complex(K.cy.real()), Complex(K.cz.real())};
      const double radius = std::sqrt(std::norm(K.cx) + std::norm(K.cy) + std::norm(K.cz));
      max_eig = std::max(max_eig, std::abs(K.c0.real()) + radius);
      const auto U = exp_i(K * (-dt / hbar)).to_matrix();
      k00_(i, j) = U(0, 0);
      k01_(i, j) = U(0, 1);
      k10_(i, j) = U(1, 0);
      k11_(i, j) = U(1, 1);
    }
  }
  stability_ = dt * max_eig / hbar;
  if (stability_ > std::numbers::pi) {
    throw Error(ErrorKind::StabilityBound,
                "dt * max|kinetic eigenvalue| / hbar = " + std::to_string(stability_) + " exceeds pi");
  }
  has_potential_ = E.E0.x() != 0.0 || E.E0.y() != 0.0;
  if (has_potential_) {
    half_potential_.resize(nx, ny);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const double v = e * (E.E0.x() * grid.x(i) + E.E0.y() * grid.y(j));
        half_potential_(i, j) = std::polar(1.0, -0.5 * v * dt / hbar);
      }
    }
  }
}

void SplitStepPropagator::step(SpinorField& psi) {
  if (has_potential_) {
    psi.up *= half_potential_;
    psi.down *= half_potential_;
  }
  fft_.forward(psi.up);
  fft_.forward(psi.down);
  const ComplexGrid up = k00_ * psi.up + k01_ * psi.down;
  psi.down = k10_ * psi.up + k11_ * psi.down;
  psi.up = up;
  fft_.inverse(psi.up);
  fft_.inverse(psi.down);
  if (has_potential_) {
    psi.up *= half_potential_;
    psi.down *= half_potential_;
  }
}

void SplitStepPropagator::advance(SpinorField& psi, int n_steps) {
  if (has_potential_) {
    for (int n = 0; n < n_steps; ++n) step(psi);
    return;
  }
  // Without an in-plane potential every step is diagonal in k, so the
  // transforms between consecutive steps cancel.
  if (n_steps <= 0) return;
  fft_.forward(psi.up);
  fft_.forward(psi.down);
  for (int n = 0; n < n_steps; ++n) {
    const ComplexGrid up = k00_ * psi.up + k01_ * psi.down;
    psi.down = k10_ * psi.up + k11_ * psi.down;
    psi.up = up;
  }
  fft_.inverse(psi.up);
  fft_.inverse(psi.down);
}

SpinorField split_step_evolve(const SpinorField& psi, const EFieldSpec& E, const UnitSystem& u,
                              double dt, int n_steps, EvolutionDiagnostics* diag) {
  SplitStepPropagator prop(psi.grid, E, u, dt);
  SpinorField out = psi;
  prop.advance(out, n_steps);
  if (diag != nullptr) {
    diag->max_boundary_fraction = boundary_fraction(out);
    diag->boundary_contamination = diag->max_boundary_fraction > kBoundaryWarnFraction;
  }
  return out;
}

ObservableRecord observables(const SpinorField& psi, double t, double hbar) {
  const Grid2D& g = psi.grid;
  const double cell = g.dx() * g.dy();
  ObservableRecord rec;
  rec.t = t;
  rec.norm = psi.norm();
  if (std::abs(rec.norm - 1.0) > 1e-8) {
    throw Error(ErrorKind::UnnormalizedField, "spinor field norm deviates from 1 by more than 1e-8");
  }
  double sx = 0.0, sy = 0.0, nu = 0.0, nd = 0.0, yu = 0.0, yd = 0.0;
  Complex cross(0.0);
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      const double pu = std::norm(psi.up(i, j)), pd = std::norm(psi.down(i, j));
      sx += x * (pu + pd);
      sy += y * (pu + pd);
      nu += pu;
      nd += pd;
      yu += y * pu;
      yd += y * pd;
      cross += std::conj(psi.up(i, j)) * psi.down(i, j);
    }
  }
  rec.mean_r = RealVec3(sx * cell, sy * cell, 0.0);
  rec.norm_up = nu * cell;
  rec.norm_down = nd * cell;
  rec.mean_sigma = RealVec3(2.0 * cross.real() * cell, 2.0 * cross.imag() * cell, (nu - nd) * cell);
  constexpr double kEmpty = 1e-14;
  rec.y_centroid_up = rec.norm_up > kEmpty ? yu / nu : std::numeric_limits<double>::quiet_NaN();
  rec.y_centroid_down = rec.norm_down > kEmpty ? yd / nd : std::numeric_limits<double>::quiet_NaN();

  Fft2d fft(g.nx, g.ny);
  ComplexGrid up = psi.up, down = psi.down;
  fft.forward(up);
  fft.forward(down);
  double w = 0.0, px = 0.0, py = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double ky = g.ky(j);
    for (int i = 0; i < g.nx; ++i) {
      const double d = std::norm(up(i, j)) + std::norm(down(i, j));
      w += d;
      px += g.kx(i) * d;
      py += ky * d;
    }
  }
  rec.mean_p = RealVec3(hbar * px / w, hbar * py / w, 0.0);
  return rec;
}

QuantumRun run_quantum(const WavepacketSpec& spec, const Grid2D& grid, const EFieldSpec& E,
                       const UnitSystem& u, double dt, int n_steps, int sample_every) {
  Sampled s = sample_run(spec, grid, E, u, dt, n_steps, sample_every);
  return {spec, grid, E, u, dt, n_steps, std::move(s.records), s.diag};
}

EhrenfestSeries ehrenfest_series(const WavepacketSpec& spec, const Grid2D& grid, const EFieldSpec& E,
                                 const UnitSystem& u, double dt, int n_steps, int sample_every) {
  Sampled s = sample_run(spec, grid, E, u, dt, n_steps, sample_every);

  EhrenfestSeries out;
  out.records = std::move(s.records);
  EhrenfestReport& rep = out.report;
  rep.max_boundary_fraction = s.diag.max_boundary_fraction;
  rep.boundary_contamination = s.diag.boundary_contamination;
  const OpVec3 A = build_gauge_r(E, u, RealVec3::Zero());
  rep.dropped_energy_term = u.e_charge * u.e_charge * op_dot(A, A).c0.real() / (2.0 * u.mass);

  ParticleState init;
  init.r = in_plane(spec.center);
  init.p = u.hbar * in_plane(spec.k0);
  init.s = spec.spin;
  TrajectoryOptions opts;
  opts.confine_2d = true;
  out.classical = integrate_trajectory(init, E, u, dt, n_steps, opts);

  const auto& rec = out.records;
  auto state_of = [&](const ObservableRecord& r) {
    ParticleState st;
    st.r = r.mean_r;
    st.p = r.mean_p;
    st.s = r.mean_sigma;
    st.t = r.t;
    return st;
  };
  // m<v> = <p> - e <A_r>; A_r is linear in sigma, so <A_r> is exact.
  auto mechanical = [&](const ObservableRecord& r) {
    return RealVec3(r.mean_p - u.e_charge * expectation(r.mean_sigma, A));
  };

  for (const auto& r : rec) {
    rep.max_norm_drift = std::max(rep.max_norm_drift, std::abs(r.norm - 1.0));
    const auto step = static_cast<std::size_t>(std::llround(r.t / dt));
    if (step < out.classical.states.size()) {
      const RealVec3 d = in_plane(r.mean_r - out.classical.states[step].r);
      rep.trajectory_deviation = std::max(rep.trajectory_deviation, d.norm());
    }
  }
  rep.trajectory_deviation_over_width = rep.trajectory_deviation / spec.width;

  for (std::size_t k = 1; k + 1 < rec.size(); ++k) {
    const double span = rec[k + 1].t - rec[k - 1].t;
    const ParticleState st = state_of(rec[k]);
    const RealVec3 drdt = (rec[k + 1].mean_r - rec[k - 1].mean_r) / span;
    const RealVec3 dpdt = (rec[k + 1].mean_p - rec[k - 1].mean_p) / span;
    const RealVec3 dmvdt = (mechanical(rec[k + 1]) - mechanical(rec[k - 1])) / span;
    const RealVec3 v = expectation(st.s, velocity_operator(st.p, E, u, st.r));
    const RealVec3 f = heisenberg_force(st, E, u).breakdown.total;
    const RealVec3 vk = karplus_anomalous_velocity(st.p, -u.e_charge * E.E0, u, st.s);
    rep.velocity_residual = std::max(rep.velocity_residual, in_plane(drdt - v).norm());
    rep.momentum_residual = std::max(rep.momentum_residual, in_plane(dmvdt - f).norm());
    rep.canonical_momentum_residual = std::max(rep.canonical_momentum_residual, in_plane(dpdt - f).norm());
    rep.karplus_velocity_residual = std::max(rep.karplus_velocity_residual, in_plane(drdt - vk).norm());
  }
  return out;
}

double spinhall_separation(const QuantumRun& up_run, const QuantumRun& down_run) {
  const auto& a = up_run;
  const auto& b = down_run;
  const bool same = a.grid == b.grid && a.units.hbar == b.units.hbar &&
                    a.units.e_charge == b.units.e_charge && a.units.mass == b.units.mass &&
                    a.units.G == b.units.G && a.field.kind == b.field.kind && a.field.E0 == b.field.E0 &&
                    a.field.gradient == b.field.gradient && a.dt == b.dt && a.n_steps == b.n_steps &&
                    a.spec.center == b.spec.center && a.spec.k0 == b.spec.k0 &&
                    a.spec.width == b.spec.width && (a.spec.spin + b.spec.spin).norm() <= 1e-12;
  if (!same) {
    throw Error(ErrorKind::MismatchedScenarios, "spin-Hall runs must differ only in the sign of the spin");
  }
  if (a.records.empty() || b.records.empty()) {
    throw Error(ErrorKind::MismatchedScenarios, "spin-Hall runs carry no samples");
  }
  return a.records.back().mean_r.y() - b.records.back().mean_r.y();
}

}  // namespace spingauge
