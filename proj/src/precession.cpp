#include "spingauge/precession.hpp"

namespace spingauge {

namespace {

const Complex kI(0.0, 1.0);

PauliOp su2_from_phase(const RealVec3& lambda) { return exp_i(sigma_dot(lambda)); }

RealVec3 unit(int axis) {
  RealVec3 e = RealVec3::Zero();
  e(axis) = 1.0;
  return e;
}

// Hermitian connection A_mu = i U d_mu U^dagger.
OpVec3 connection(const LambdaField& lambda, const RealVec3& r, double h) {
  const PauliOp U = su2_from_phase(lambda(r));
  OpVec3 a;
  for (int mu = 0; mu < 3; ++mu) {
    const RealVec3 d = h * unit(mu);
    const PauliOp dUdag = (su2_from_phase(lambda(r + d)).adjoint() -
                           su2_from_phase(lambda(r - d)).adjoint()) * (0.5 / h);
    a[mu] = kI * (U * dUdag);
  }
  return a;
}

}  // namespace

PhaseVector phase_for_segment(const PathSegment& seg, const EFieldSpec& E, const UnitSystem& u) {
  const RealVec3 dr = seg.r_end - seg.r_start;
  const RealVec3 mid = 0.5 * (seg.r_start + seg.r_end);
  return {u.G * dr.cross(E.at(mid))};
}

Propagator propagator(const PhaseVector& phase, const UnitSystem& u) {
  return {su2_from_phase((u.e_charge / u.hbar) * phase.lambda)};
}

Propagator path_ordered_product(std::span<const PathSegment> path, const EFieldSpec& E,
                                const UnitSystem& u, int n_sub) {
  if (n_sub < 1) {
    throw ValidationError("n_sub", "must be at least 1");
  }
  PauliOp total = PauliOp::identity();
  for (const PathSegment& seg : path) {
    const RealVec3 step = (seg.r_end - seg.r_start) / static_cast<double>(n_sub);
    for (int k = 0; k < n_sub; ++k) {
      const PathSegment piece{seg.r_start + k * step, seg.r_start + (k + 1) * step};
      total = propagator(phase_for_segment(piece, E, u), u).U * total;
    }
  }
  return {total};
}

PureGaugeField pure_gauge_field(const LambdaField& lambda, const RealVec3& r, double h) {
  require_step(h);
  const PauliOp U = su2_from_phase(lambda(r));
  PureGaugeField out;
  for (int mu = 0; mu < 3; ++mu) {
    const RealVec3 d = h * unit(mu);
    const PauliOp dUdag = (su2_from_phase(lambda(r + d)).adjoint() -
                           su2_from_phase(lambda(r - d)).adjoint()) * (0.5 / h);
    PauliOp g = U * dUdag;
    out.scalar_residue = std::max(out.scalar_residue, std::abs(g.c0));
    g.c0 = 0.0;
    out.sigma_part[mu] = g;
  }
  return out;
}

OpVec3 no_precession_limit(const EFieldSpec& E, const UnitSystem& u, const RealVec3& r) {
  return build_gauge_r(E, u, r);
}

double pure_gauge_curvature_check(const LambdaField& lambda, const RealVec3& r, double h) {
  require_step(h);
  std::array<OpVec3, 3> d;  // d[i][j] = d_i A_j
  for (int i = 0; i < 3; ++i) {
    const RealVec3 di = h * unit(i);
    d[static_cast<std::size_t>(i)] =
        (connection(lambda, r + di, h) - connection(lambda, r - di, h)) * (0.5 / h);
  }
  OpVec3 curl;
  curl[0] = d[1][2] - d[2][1];
  curl[1] = d[2][0] - d[0][2];
  curl[2] = d[0][1] - d[1][0];
  const OpVec3 a = connection(lambda, r, h);
  const OpVec3 f = curl - op_cross(a, a) * kI;
  return std::max({f[0].op_norm(), f[1].op_norm(), f[2].op_norm()});
}

RealVec3 precession_vector(const RealVec3& p, const RealVec3& E, const UnitSystem& u) {
  return (-2.0 * u.e_charge * u.G / (u.mass * u.hbar)) * p.cross(E);
}

RealVec3 rotate(const RealVec3& v, const RealVec3& w) {
  const double angle = w.norm();
  if (angle == 0.0) return v;
  const RealVec3 n = w / angle;
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + n.cross(v) * s + n * (n.dot(v)) * (1.0 - c);
}

RealVec3 precess_bloch(const RealVec3& s, const RealVec3& p, const RealVec3& E,
                       const UnitSystem& u, double dt) {
  if (std::abs(s.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::UnnormalizedSpin, "Bloch vector must have unit length");
  }
  return rotate(s, precession_vector(p, E, u) * dt);
}

}  // namespace spingauge
