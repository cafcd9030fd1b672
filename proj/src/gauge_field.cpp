#include "spingauge/gauge_field.hpp"

#include <string>

namespace spingauge {

namespace {

const Complex kI(0.0, 1.0);

// (curl F)_k = eps_kij d_i F_j from a table of partial derivatives d[i][j].
OpVec3 curl_from_partials(const std::array<OpVec3, 3>& d) {
  OpVec3 c;
  c[0] = d[1][2] - d[2][1];
  c[1] = d[2][0] - d[0][2];
  c[2] = d[0][1] - d[1][0];
  return c;
}

template <typename Field>
OpVec3 central_curl(const Field& f, const RealVec3& at, double h, double scale) {
  std::array<OpVec3, 3> d;
  for (int i = 0; i < 3; ++i) {
    // Divide by the separation actually realised in floating point, so the
    // stencil carries no rounding error from the displaced arguments.
    RealVec3 plus = at, minus = at;
    plus(i) += h * scale;
    minus(i) -= h * scale;
    const double span = (plus(i) - minus(i)) / scale;
    d[static_cast<std::size_t>(i)] = (f(plus) - f(minus)) * (1.0 / span);
  }
  return curl_from_partials(d);
}

}  // namespace

void UnitSystem::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("units.") + name, "must be finite and strictly positive");
    }
  };
  check(hbar, "hbar");
  check(e_charge, "e");
  check(mass, "m");
  if (!(G >= 0.0) || !std::isfinite(G)) {
    throw ValidationError("units.G", "must be finite and non-negative");
  }
}

EFieldSpec EFieldSpec::uniform(const RealVec3& e0) {
  EFieldSpec s;
  s.kind = Kind::Uniform;
  s.E0 = e0;
  return s;
}

EFieldSpec EFieldSpec::linear(const RealVec3& e0, const Eigen::Matrix3d& grad) {
  EFieldSpec s;
  s.kind = Kind::LinearGradient;
  s.E0 = e0;
  s.gradient = grad;
  return s;
}

RealVec3 EFieldSpec::at(const RealVec3& r) const {
  if (kind == Kind::Uniform) return E0;
  return E0 + gradient * r;
}

void require_step(double h) {
  if (!(h >= kMinStep)) {
    throw Error(ErrorKind::StepTooSmall, "finite-difference step below 1e-12");
  }
}

OpVec3 gauge_from_field(const RealVec3& E, double G) {
  // (E x sigma)_mu = eps_mu,nu,lambda E_nu sigma_lambda
  OpVec3 a;
  a[0] = PauliOp::from_vector(RealVec3(0.0, -E.z(), E.y()));
  a[1] = PauliOp::from_vector(RealVec3(E.z(), 0.0, -E.x()));
  a[2] = PauliOp::from_vector(RealVec3(-E.y(), E.x(), 0.0));
  return a * G;
}

OpVec3 build_gauge_r(const EFieldSpec& E, const UnitSystem& u, const RealVec3& r) {
  return gauge_from_field(E.at(r), u.G);
}

Curvature curvature_r(const GaugeFieldR& A, const RealVec3& r, double h) {
  require_step(h);
  const UnitSystem& u = A.units();
  Curvature c;
  if (A.field().kind == EFieldSpec::Kind::Uniform) {
    c.curl_part = OpVec3::zero();
  } else {
    c.curl_part = central_curl([&](const RealVec3& x) { return A.at(x); }, r, h, 1.0);
  }
  const OpVec3 a = A.at(r);
  c.cross_part = op_cross(a, a);
  c.total = c.curl_part - c.cross_part * (kI * (u.e_charge / u.hbar));
  return c;
}

OpVec3 build_gauge_k(const RealVec3& p, const UnitSystem& u) {
  // (sigma x p)_mu = eps_mu,nu,lambda sigma_nu p_lambda
  OpVec3 a;
  a[0] = PauliOp::from_vector(RealVec3(0.0, p.z(), -p.y()));
  a[1] = PauliOp::from_vector(RealVec3(-p.z(), 0.0, p.x()));
  a[2] = PauliOp::from_vector(RealVec3(p.y(), -p.x(), 0.0));
  return a * (u.G / u.mass);
}

OpVec3 curl_k(const GaugeFieldK& A, const RealVec3& p, double h) {
  require_step(h);
  return central_curl([&](const RealVec3& q) { return A.at(q); }, p, h, A.units().hbar);
}

OpVec3 cross_self_k(const RealVec3& p, const UnitSystem& u) {
  const OpVec3 a = build_gauge_k(p, u);
  return op_cross(a, a);
}

Curvature curvature_k(const RealVec3& p, const UnitSystem& u, double h) {
  Curvature c;
  c.curl_part = curl_k(GaugeFieldK(u), p, h);
  c.cross_part = cross_self_k(p, u);
  c.total = c.curl_part - c.cross_part * kI;
  return c;
}

}  // namespace spingauge
