#include "spingauge/classical.hpp"

#include <functional>

#include "spingauge/precession.hpp"

namespace spingauge {

namespace {

const Complex kI(0.0, 1.0);

using Symbol = std::function<PauliOp(const RealVec3& r, const RealVec3& p)>;

RealVec3 unit(int axis) {
  RealVec3 e = RealVec3::Zero();
  e(axis) = 1.0;
  return e;
}

PauliOp d_dr(const Symbol& f, const RealVec3& r, const RealVec3& p, int j, double h) {
  const RealVec3 d = h * unit(j);
  return (f(r + d, p) - f(r - d, p)) * (0.5 / h);
}

PauliOp d_dp(const Symbol& f, const RealVec3& r, const RealVec3& p, int j, double h) {
  const RealVec3 d = h * unit(j);
  return (f(r, p + d) - f(r, p - d)) * (0.5 / h);
}

// Weyl-symmetrized Poisson bracket {X, Y} of operator-valued symbols.
PauliOp poisson(const Symbol& x, const Symbol& y, const RealVec3& r, const RealVec3& p, double h) {
  PauliOp out;
  for (int j = 0; j < 3; ++j) {
    out += sym_product(d_dr(x, r, p, j, h), d_dp(y, r, p, j, h));
    out -= sym_product(d_dp(x, r, p, j, h), d_dr(y, r, p, j, h));
  }
  return out;
}

void require_finite(const ParticleState& s) {
  if (!s.r.allFinite() || !s.p.allFinite() || !s.s.allFinite() || !std::isfinite(s.t)) {
    throw Error(ErrorKind::NonFiniteState, "trajectory state is not finite at t = " + std::to_string(s.t));
  }
}

struct Derivative {
  RealVec3 dr, dp, ds;
};

}  // namespace

RealVec3 force_f1(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u, double h) {
  require_step(h);
  auto A = [&](const RealVec3& r) { return build_gauge_r(E, u, r); };
  RealVec3 f = RealVec3::Zero();
  const RealVec3 along = h * state.p;
  const OpVec3 directional = (A(state.r + along) - A(state.r - along)) * (0.5 / h);
  for (int i = 0; i < 3; ++i) {
    const RealVec3 d = h * unit(i);
    const PauliOp grad = (op_dot(state.p, A(state.r + d)) - op_dot(state.p, A(state.r - d))) * (0.5 / h);
    f(i) = expectation(state.s, grad - directional[i]).real();
  }
  return (u.e_charge / u.mass) * f;
}

RealVec3 force_f2(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u) {
  const OpVec3 A = build_gauge_r(E, u, state.r);
  const PauliOp pA = op_dot(state.p, A);
  const Complex pref = -kI * (u.e_charge * u.e_charge / (u.mass * u.hbar));
  return expectation(state.s, commutator(A, pA) * pref);
}

RealVec3 force_f2_closed_form(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u) {
  const RealVec3 e = E.at(state.r);
  const double pref = 2.0 * u.e_charge * u.e_charge * u.G * u.G / (u.mass * u.hbar);
  return pref * state.s.dot(e) * state.p.cross(e);
}

RealVec3 force_f2_lorentz(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u,
                          CrossOrder order) {
  const OpVec3 A = build_gauge_r(E, u, state.r);
  const OpVec3 self = op_cross(A, A, order) * (-kI * (u.e_charge / u.hbar));
  const OpVec3 f = op_cross(RealVec3(state.p / u.mass), self) * u.e_charge;
  return expectation(state.s, f);
}

ForceBreakdown force_breakdown(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u,
                               double h) {
  ForceBreakdown b;
  b.f_ext = -u.e_charge * E.at(state.r);
  b.f1 = force_f1(state, E, u, h);
  b.f2 = force_f2(state, E, u);
  b.total = b.f_ext + b.f1 + b.f2;
  return b;
}

HeisenbergForce heisenberg_force(const ParticleState& state, const EFieldSpec& E,
                                 const UnitSystem& u, double h) {
  require_step(h);
  if (!E.is_static()) {
    throw Error(ErrorKind::UnsupportedFieldSpec, "heisenberg_force needs a static field");
  }
  const double e = u.e_charge, m = u.mass;
  const Symbol h0 = [&](const RealVec3&, const RealVec3& p) {
    return PauliOp::scalar(p.squaredNorm() / (2.0 * m));
  };
  const Symbol h_so = [&](const RealVec3& r, const RealVec3& p) {
    return op_dot(p, build_gauge_r(E, u, r)) * (-e / m);
  };
  const Symbol ham = [&](const RealVec3& r, const RealVec3& p) { return h0(r, p) + h_so(r, p); };
  const PauliOp H = ham(state.r, state.p);

  OpVec3 f1, f2, orb2;
  for (int i = 0; i < 3; ++i) {
    const Symbol p_i = [i](const RealVec3&, const RealVec3& p) { return PauliOp::scalar(p(i)); };
    const Symbol a_i = [&, i](const RealVec3& r, const RealVec3&) { return build_gauge_r(E, u, r)[i]; };
    // (1/i hbar)[p_i, H] minus the electrostatic part, plus -e {A_i, H0}.
    f1[i] = poisson(p_i, ham, state.r, state.p, h) - e * poisson(a_i, h0, state.r, state.p, h);
    orb2[i] = -e * poisson(a_i, h_so, state.r, state.p, h);
    // -(e / i hbar) [A_i, H]
    f2[i] = commutator(a_i(state.r, state.p), H) * (kI * (e / u.hbar));
  }

  HeisenbergForce out;
  out.breakdown.f_ext = -e * E.at(state.r);
  out.breakdown.f1 = expectation(state.s, f1);
  out.breakdown.f2 = expectation(state.s, f2);
  out.breakdown.total = out.breakdown.f_ext + out.breakdown.f1 + out.breakdown.f2;
  out.orbital_second_order = expectation(state.s, orb2);
  return out;
}

OpVec3 velocity_operator(const RealVec3& p, const EFieldSpec& E, const UnitSystem& u, const RealVec3& r) {
  return OpVec3::lift(p / u.mass) - build_gauge_r(E, u, r) * (u.e_charge / u.mass);
}

RealVec3 mean_velocity(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u) {
  return expectation(state.s, velocity_operator(state.p, E, u, state.r));
}

RealVec3 karplus_anomalous_velocity(const RealVec3& p, const RealVec3& dpdt, const UnitSystem& u,
                                    const RealVec3& s) {
  const Curvature F = curvature_k(p, u);
  const OpVec3 term = op_cross(dpdt, F.total) * (-1.0 / u.hbar);
  return p / u.mass + expectation(s, term);
}

RealVec3 spin_precession_rate(const RealVec3& p, const RealVec3& E, const UnitSystem& u) {
  // H_so = -(e/m) p.A_r; d sigma_i/dt = (1/i hbar)[sigma_i, H_so] = M_ij sigma_j.
  const PauliOp h_so = op_dot(p, gauge_from_field(E, u.G)) * (-u.e_charge / u.mass);
  Eigen::Matrix3d M;
  for (int i = 0; i < 3; ++i) {
    const PauliOp d = commutator(PauliOp::sigma(i), h_so) * (-kI / u.hbar);
    for (int j = 0; j < 3; ++j) M(i, j) = d.coeff(j).real();
  }
  // Omega x s = M s for antisymmetric M.
  return {M(2, 1), M(0, 2), M(1, 0)};
}

TrajectorySeries integrate_trajectory(const ParticleState& init, const EFieldSpec& E,
                                      const UnitSystem& u, double dt, int n_steps,
                                      const TrajectoryOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("dt", "must be finite and positive");
  }
  if (n_steps < 0) {
    throw ValidationError("n_steps", "must be non-negative");
  }
  if (std::abs(init.s.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::UnnormalizedSpin, "initial Bloch vector must have unit length");
  }
  if (!E.is_static()) {
    throw Error(ErrorKind::UnsupportedFieldSpec, "trajectory integration needs a static field");
  }
  require_finite(init);

  const double e = u.e_charge, m = u.mass;
  auto rhs = [&](const RealVec3& r, const RealVec3& p, const RealVec3& s) {
    const RealVec3 field = E.at(r);
    Derivative d;
    d.dr = p / m - (e * u.G / m) * field.cross(s);
    // -dH/dr with <p.A_r> = G s.(p x E(r)) = G E(r).(s x p)
    d.dp = -e * field;
    if (E.kind == EFieldSpec::Kind::LinearGradient) {
      d.dp += (e * u.G / m) * (E.gradient.transpose() * s.cross(p));
    }
    d.ds = precession_vector(p, field, u).cross(s);
    if (options.confine_2d) {
      d.dr.z() = 0.0;
      d.dp.z() = 0.0;
    }
    return d;
  };

  TrajectorySeries out;
  out.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.forces.reserve(static_cast<std::size_t>(n_steps) + 1);
  ParticleState cur = init;
  cur.s.normalize();
  out.states.push_back(cur);
  out.forces.push_back(force_breakdown(cur, E, u, options.fd_step));

  for (int n = 0; n < n_steps; ++n) {
    const Derivative k1 = rhs(cur.r, cur.p, cur.s);
    const Derivative k2 = rhs(cur.r + 0.5 * dt * k1.dr, cur.p + 0.5 * dt * k1.dp, cur.s + 0.5 * dt * k1.ds);
    const Derivative k3 = rhs(cur.r + 0.5 * dt * k2.dr, cur.p + 0.5 * dt * k2.dp, cur.s + 0.5 * dt * k2.ds);
    const Derivative k4 = rhs(cur.r + dt * k3.dr, cur.p + dt * k3.dp, cur.s + dt * k3.ds);
    ParticleState next;
    next.r = cur.r + (dt / 6.0) * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    next.p = cur.p + (dt / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    next.s = cur.s + (dt / 6.0) * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
    next.t = init.t + (n + 1) * dt;
    require_finite(next);
    const double len = next.s.norm();
    out.max_spin_drift = std::max(out.max_spin_drift, std::abs(len - 1.0));
    next.s /= len;
    out.states.push_back(next);
    out.forces.push_back(force_breakdown(next, E, u, options.fd_step));
    cur = next;
  }
  return out;
}

}  // namespace spingauge
