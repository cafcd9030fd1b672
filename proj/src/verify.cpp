#include "spingauge/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "spingauge/classical.hpp"
#include "spingauge/config.hpp"
#include "spingauge/gauge_field.hpp"
#include "spingauge/precession.hpp"
#include "spingauge/wavepacket.hpp"

namespace spingauge {

namespace {

constexpr Complex kI{0.0, 1.0};

using Matrix2 = Eigen::Matrix2cd;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  RealVec3 vec(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  RealVec3 unit() {
    std::normal_distribution<double> n(0.0, 1.0);
    RealVec3 v(n(rng_), n(rng_), n(rng_));
    while (v.norm() < 1e-3) v = RealVec3(n(rng_), n(rng_), n(rng_));
    return v.normalized();
  }
  PauliOp op() {
    return {Complex(uniform(-1, 1), uniform(-1, 1)), Complex(uniform(-1, 1), uniform(-1, 1)),
            Complex(uniform(-1, 1), uniform(-1, 1)), Complex(uniform(-1, 1), uniform(-1, 1))};
  }
  PauliOp hermitian(double scale) { return PauliOp::from_vector(vec(scale), Complex(uniform(-scale, scale), 0.0)); }

 private:
  std::mt19937_64 rng_;
};

const std::array<Matrix2, 3>& dense_sigma() {
  static const std::array<Matrix2, 3> s = [] {
    std::array<Matrix2, 3> m;
    m[0] << 0, 1, 1, 0;
    m[1] << 0, -kI, kI, 0;
    m[2] << 1, 0, 0, -1;
    return m;
  }();
  return s;
}

Matrix2 dense(const PauliOp& a) {
  const auto& s = dense_sigma();
  return a.c0 * Matrix2::Identity() + a.cx * s[0] + a.cy * s[1] + a.cz * s[2];
}

double dense_distance(const Matrix2& a, const Matrix2& b) { return (a - b).cwiseAbs().maxCoeff(); }

OpVec3 sigma_dot_p_times_p(const RealVec3& p, Complex scale) {
  OpVec3 out;
  const PauliOp sp = sigma_dot(p);
  for (int i = 0; i < 3; ++i) out[i] = sp * (scale * p(i));
  return out;
}

// Largest relative mismatch of two real vectors, relative to the larger norm
// (absolute below `floor`).
double rel_error(const RealVec3& a, const RealVec3& b, double floor = 1e-300) {
  const double scale = std::max({a.norm(), b.norm(), floor});
  return (a - b).norm() / scale;
}

// ---------------------------------------------------------------- Pauli core

void pauli_checks(RunReport& rep, Sampler& rnd, int n, CrossOrder order) {
  rep.expect("pauli.sigma_cross_sigma", sigma_cross_mismatch(order), 1e-13, "sigma x sigma = 2i sigma");

  double anti = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const PauliOp expected = PauliOp::identity() * (i == j ? 2.0 : 0.0);
      anti = std::max(anti, distance(anticommutator(PauliOp::sigma(i), PauliOp::sigma(j)), expected));
    }
  }
  rep.expect("pauli.anticommutation", anti, 1e-13, "{sigma_i, sigma_j} = 2 delta_ij");

  double prod = 0.0;
  for (int k = 0; k < n; ++k) {
    const PauliOp a = rnd.op(), b = rnd.op();
    prod = std::max(prod, dense_distance(dense(a * b), dense(a) * dense(b)));
    prod = std::max(prod, dense_distance(dense(commutator(a, b)), dense(a) * dense(b) - dense(b) * dense(a)));
  }
  rep.expect("pauli.product_vs_dense", prod, 1e-13, std::to_string(n) + " random products and commutators");

  double ex = 0.0, unit_err = 0.0;
  for (int k = 0; k < n; ++k) {
    const PauliOp h = rnd.hermitian(k % 2 == 0 ? 2.0 : 1e-4);
    const PauliOp u = exp_i(h);
    const Matrix2 oracle = (Matrix2(kI * dense(h))).exp();
    ex = std::max(ex, dense_distance(dense(u), oracle));
    const Matrix2 uu = dense(u) * dense(u).adjoint();
    unit_err = std::max(unit_err, dense_distance(uu, Matrix2::Identity()));
  }
  rep.expect("pauli.exp_i_vs_matrix_exponential", ex, 1e-12, "dense matrix exponential oracle");
  rep.expect("pauli.exp_i_unitary", unit_err, 1e-12);
}

// -------------------------------------------------------------- gauge field

void gauge_checks(RunReport& rep, Sampler& rnd, int n, CrossOrder order) {
  UnitSystem u;
  u.G = 0.37;
  const double e0 = 1.3;
  const OpVec3 a = build_gauge_r(EFieldSpec::uniform({0, 0, e0}), u, RealVec3::Zero());
  OpVec3 expected;
  expected[0] = PauliOp::sigma(1) * (-u.G * e0);
  expected[1] = PauliOp::sigma(0) * (u.G * e0);
  rep.expect("gauge.A_r_uniform_z", distance(a, expected), 1e-15, "G E0 (-sigma_y, sigma_x, 0)");

  // Self-cross of A_r against a dense-matrix evaluation.
  double cross = 0.0, herm = 0.0;
  for (int k = 0; k < n; ++k) {
    UnitSystem uk;
    uk.G = rnd.uniform(0.0, 1.0);
    const RealVec3 E = rnd.vec(2.0);
    const OpVec3 A = build_gauge_r(EFieldSpec::uniform(E), uk, RealVec3::Zero());
    herm = std::max(herm, A.is_hermitian(0.0) ? 0.0 : A.max_abs());
    const OpVec3 AxA = op_cross(A, A, order);
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, l = (i + 2) % 3;
      const Matrix2 oracle = dense(A[j]) * dense(A[l]) - dense(A[l]) * dense(A[j]);
      cross = std::max(cross, dense_distance(dense(AxA[i]), oracle));
    }
  }
  rep.expect("gauge.A_r_hermitian", herm, 0.0);
  rep.expect("gauge.A_r_cross_A_r_vs_dense", cross, 1e-13);

  // Curvature of a uniform field: purely the self-cross term, 2 G^2 E0^2 sigma_z z.
  const Curvature F = curvature_r(GaugeFieldR(EFieldSpec::uniform({0, 0, e0}), u), RealVec3::Zero());
  OpVec3 fz;
  fz[2] = PauliOp::sigma(2) * (2.0 * u.G * u.G * e0 * e0);
  rep.expect("gauge.curvature_r_uniform", distance(F.total, fz), 1e-14, "F = 2 G^2 E0^2 sigma_z z-hat");

  // k-space curl: exact for a linear field, independent of the step.
  UnitSystem uk;
  uk.hbar = 0.7;
  uk.mass = 1.3;
  uk.G = 0.45;
  double curl = 0.0, self = 0.0, total = 0.0, printed12 = 0.0, printed13 = 0.0;
  const OpVec3 curl_expected = OpVec3::sigma() * (2.0 * uk.hbar * uk.G / uk.mass);
  const double g_m = uk.G / uk.mass;
  for (int k = 0; k < n; ++k) {
    const RealVec3 p = rnd.vec(1.0);
    const GaugeFieldK A(uk);
    for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) curl = std::max(curl, distance(curl_k(A, p, h), curl_expected));
    const OpVec3 brute = cross_self_k(p, uk);
    self = std::max(self, distance(brute, sigma_dot_p_times_p(p, 2.0 * kI * g_m * g_m)));
    const OpVec3 total_expected = curl_expected + sigma_dot_p_times_p(p, Complex(2.0 * g_m * g_m, 0.0));
    total = std::max(total, distance(curvature_k(p, uk).total, total_expected));
    printed12 = std::max(printed12, distance(brute, sigma_dot_p_times_p(p, Complex(-g_m * g_m, 0.0))));
    printed13 = std::max(printed13, distance(curvature_k(p, uk).total,
                                             curl_expected + sigma_dot_p_times_p(p, kI * g_m * g_m)));
  }
  rep.expect("gauge.curl_k_exact", curl, 1e-12, "(2 hbar G/m) sigma for h = 1e-1 ... 1e-4");
  rep.expect("gauge.A_k_cross_A_k", self, 1e-12, "brute force 2i (G/m)^2 (sigma.p) p");
  rep.expect("gauge.curvature_k_total", total, 1e-12, "(2 hbar G/m) sigma + 2 (G/m)^2 (sigma.p) p");
  rep.info("printed_form.A_k_cross_A_k", printed12,
           "published -(G/m)^2 (sigma.p) p differs from brute force 2i (G/m)^2 (sigma.p) p (typo)");
  rep.info("printed_form.F_k", printed13,
           "published second term i (G/m)^2 (sigma.p) p differs from brute force 2 (G/m)^2 (sigma.p) p (typo)");
  rep.info("printed_form.A_k_prefactor", 0.0,
           "A_k = (G/m)(sigma x p) used throughout; one published sentence omits the 1/m");
}

// ---------------------------------------------------------- precession

Propagator l_path_product(const EFieldSpec& E, const UnitSystem& u, int n_sub) {
  const std::array<PathSegment, 2> path{PathSegment{{0, 0, 0}, {1.5, 0, 0}}, PathSegment{{1.5, 0, 0}, {1.5, 1.2, 0}}};
  return path_ordered_product(path, E, u, n_sub);
}

void precession_checks(RunReport& rep, Sampler& rnd, int n) {
  UnitSystem u;
  u.G = 0.3;
  const double d = 2.0, e0 = 1.5;
  const PhaseVector ph = phase_for_segment({{0, 0, 0}, {d, 0, 0}}, EFieldSpec::uniform({0, 0, e0}), u);
  rep.expect("precession.segment_uniform", (ph.lambda - RealVec3(0, -u.G * d * e0, 0)).norm(), 1e-15);

  double su2 = 0.0, closed = 0.0;
  for (int k = 0; k < n; ++k) {
    const Propagator P = propagator({rnd.vec(3.0)});
    su2 = std::max(su2, dense_distance(dense(P.U) * dense(P.U).adjoint(), Matrix2::Identity()));
    su2 = std::max(su2, std::abs(P.U.det() - 1.0));
    const double theta = rnd.uniform(-3.0, 3.0);
    const PauliOp expected = PauliOp::identity() * std::cos(theta) - PauliOp::sigma(1) * (kI * std::sin(theta));
    closed = std::max(closed, distance(propagator({RealVec3(0, -theta, 0)}).U, expected));
  }
  rep.expect("precession.propagator_su2", su2, 1e-12, "U U^dagger = I, det U = 1");
  rep.expect("precession.propagator_closed_form", closed, 1e-14, "cos t I - i sin t sigma_y");

  Eigen::Matrix3d grad;
  grad << 0.1, 0.0, -0.2, 0.3, 0.0, 0.1, 0.4, -0.25, 0.0;
  const EFieldSpec gradient = EFieldSpec::linear({0.2, -0.1, 1.0}, grad);
  const std::array<PathSegment, 3> loop{PathSegment{{0, 0, 0}, {1, 0.5, 0}}, PathSegment{{1, 0.5, 0}, {0.2, 1.4, 0.3}},
                                        PathSegment{{0.2, 1.4, 0.3}, {-0.5, 0.1, 0}}};
  std::array<PathSegment, 3> back;
  for (std::size_t i = 0; i < 3; ++i) back[i] = {loop[2 - i].r_end, loop[2 - i].r_start};
  const Propagator fwd = path_ordered_product(loop, gradient, u, 8);
  const Propagator rev = path_ordered_product(back, gradient, u, 8);
  rep.expect("precession.reversed_path_identity", distance(rev.U * fwd.U, PauliOp::identity()), 1e-10);

  const std::array<PathSegment, 1> single{PathSegment{{0.1, 0.2, 0}, {1.3, -0.7, 0.4}}};
  const EFieldSpec uniform = EFieldSpec::uniform({0.3, -0.4, 1.1});
  const Propagator one = propagator(phase_for_segment(single[0], uniform, u), u);
  double sub = 0.0;
  for (int n_sub : {1, 3, 16}) sub = std::max(sub, distance(path_ordered_product(single, uniform, u, n_sub).U, one.U));
  rep.expect("precession.single_segment_subdivision", sub, 1e-13, "uniform field, n_sub = 1, 3, 16");

  // Step-halving convergence of the ordered product in a gradient field.
  const PauliOp ref = l_path_product(gradient, u, 1024).U;
  std::vector<double> hs, errs;
  for (int n_sub : {4, 8, 16, 32}) {
    hs.push_back(1.0 / n_sub);
    errs.push_back(distance(l_path_product(gradient, u, n_sub).U, ref));
  }
  rep.expect("precession.path_order_convergence", 1.9 - loglog_slope(hs, errs), 0.0,
             "observed order " + format_double(loglog_slope(hs, errs)) + " >= 1.9");

  // Flatness of U dU^dagger on three smooth fields.
  const std::array<LambdaField, 3> fields{
      [](const RealVec3& r) { return RealVec3(0.3 * std::sin(r.y()), 0.2 * r.x() * r.z(), 0.25 * std::cos(r.x() + r.y())); },
      [](const RealVec3& r) { return RealVec3(0.1 * r.x() * r.x(), 0.4 * std::sin(r.z()), 0.2 * r.y()); },
      [](const RealVec3& r) { return RealVec3(0.5 * r.cross(RealVec3(0.2, -0.1, 1.0))); }};
  const RealVec3 r0(0.3, -0.2, 0.4);
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
  rep.expect("precession.pure_gauge_flatness_order", 1.9 - worst_order, 0.0,
             "worst observed order " + format_double(worst_order) + " >= 1.9");
  rep.expect("precession.pure_gauge_flatness_residual", worst_final, 1e-8, "h = 0.05/128");

  const LambdaField axis = [](const RealVec3& r) { return RealVec3(0.7 * r.x(), 0, 0); };
  const PureGaugeField pg = pure_gauge_field(axis, r0, 1e-4);
  OpVec3 axis_expected;
  axis_expected[0] = PauliOp::sigma(0) * (-kI * 0.7);
  rep.expect("precession.pure_gauge_fixed_axis", distance(pg.sigma_part, axis_expected), 1e-8, "-i a sigma_x");

  // Bitwise coincidence of the exact no-precession field with A_r.
  double bits = 0.0;
  for (int k = 0; k < n; ++k) {
    const EFieldSpec E = EFieldSpec::uniform(rnd.vec(2.0));
    const RealVec3 r = rnd.vec(5.0);
    bits = std::max(bits, distance(no_precession_limit(E, u, r), build_gauge_r(E, u, r)));
  }
  rep.expect("precession.no_precession_identity", bits, 1e-15, "shared evaluation path");

  // Scaling lambda -> eps lambda: i U dU^dagger / eps -> A_r with slope 1.
  const RealVec3 E0(0.4, -0.3, 1.0);
  std::vector<double> eps, eps_err;
  for (double s : {1e-1, 1e-2, 1e-3}) {
    const LambdaField lam = [&, s](const RealVec3& r) { return RealVec3(s * u.G * r.cross(E0)); };
    const OpVec3 a = pure_gauge_field(lam, RealVec3(1.1, -0.6, 0.2), 1e-5).sigma_part * (kI / s);
    eps.push_back(s);
    eps_err.push_back(distance(a, no_precession_limit(EFieldSpec::uniform(E0), u, RealVec3::Zero())));
  }
  const double eps_slope = loglog_slope(eps, eps_err);
  rep.expect("precession.no_precession_scaling", 0.9 - eps_slope, 0.0,
             "log-log slope " + format_double(eps_slope) + " >= 0.9");

  // Bloch rotation against SU(2) conjugation, and the rate against the commutator.
  double bloch_err = 0.0, rate = 0.0;
  for (int k = 0; k < n; ++k) {
    const RealVec3 s = rnd.unit(), p = rnd.vec(2.0), E = rnd.vec(2.0);
    const double dt = rnd.uniform(0.0, 2.0);
    const RealVec3 omega = precession_vector(p, E, u);
    const SpinState psi = apply(rotation_operator(omega * dt), SpinState::from_bloch(s));
    bloch_err = std::max(bloch_err, (precess_bloch(s, p, E, u, dt) - bloch(psi)).norm());
    rate = std::max(rate, (spin_precession_rate(p, E, u) - omega).norm());
  }
  rep.expect("precession.bloch_vs_spinor", bloch_err, 1e-10, "rotation vs exp(-i Omega dt . sigma/2)");
  rep.expect("precession.rate_vs_commutator", rate, 1e-12, "Omega = -(2eG/m hbar)(p x E) from [sigma, H]");
}

// ---------------------------------------------------------- classical

void classical_checks(RunReport& rep, Sampler& rnd, int n, std::uint64_t seed, CrossOrder order) {
  double f2 = 0.0, ortho = 0.0, flip = 0.0;
  for (int k = 0; k < n; ++k) {
    UnitSystem u;
    u.G = rnd.uniform(0.01, 1.0);
    u.mass = rnd.uniform(0.5, 2.0);
    u.hbar = rnd.uniform(0.5, 2.0);
    u.e_charge = rnd.uniform(0.5, 2.0);
    const EFieldSpec E = EFieldSpec::uniform(rnd.vec(2.0));
    ParticleState st{rnd.vec(5.0), rnd.vec(3.0), rnd.unit(), 0.0};
    const RealVec3 a = force_f2(st, E, u);
    const RealVec3 b = force_f2_closed_form(st, E, u);
    f2 = std::max(f2, rel_error(a, b));
    const double scale = std::max(a.norm() * st.p.norm() * E.E0.norm(), 1e-300);
    ortho = std::max({ortho, std::abs(a.dot(E.E0)) / scale * st.p.norm(), std::abs(a.dot(st.p)) / scale * E.E0.norm()});
    ParticleState flipped = st;
    flipped.s = -st.s;
    flip = std::max(flip, rel_error(force_f2(flipped, E, u), -a));
  }
  rep.expect("classical.f2_commutator_vs_closed_form", f2, 1e-11,
             std::to_string(n) + " random (p, E, s), relative");
  rep.expect("classical.f2_lorentz_vs_closed_form", f2_lorentz_mismatch(seed, n, order), 1e-11,
             "e (p/m) x <-(ie/hbar) A x A>, relative");
  rep.expect("classical.f2_orthogonal_to_p_and_E", ortho, 1e-12);
  rep.expect("classical.f2_spin_flip", flip, 1e-14, "f2(-s) = -f2(s)");

  UnitSystem u;
  u.G = 0.02;
  const ParticleState ref{{0, 0, 0}, {2, 0, 0}, {0, 0, 1}, 0};
  const RealVec3 f2ref = force_f2(ref, EFieldSpec::uniform({0, 0, 1}), u);
  rep.expect("classical.f2_reference_value", (f2ref - RealVec3(0, -2 * u.G * u.G * 2, 0)).norm(), 1e-15,
             "E = z, p = 2x, s = +z -> (0, -2 G^2 E0^2 p0, 0)");

  Eigen::Matrix3d grad;
  grad << 0.1, 0.0, -0.2, 0.3, 0.0, 0.1, 0.4, -0.25, 0.0;
  const std::array<EFieldSpec, 2> specs{EFieldSpec::uniform({0.3, -0.2, 1.0}),
                                        EFieldSpec::linear({0.3, -0.2, 1.0}, grad)};
  double f1_uniform = 0.0, heis = 0.0;
  for (int k = 0; k < n; ++k) {
    UnitSystem uk;
    uk.G = rnd.uniform(0.01, 0.5);
    const ParticleState st{rnd.vec(2.0), rnd.vec(2.0), rnd.unit(), 0.0};
    f1_uniform = std::max(f1_uniform, force_f1(st, specs[0], uk).norm());
    for (const EFieldSpec& E : specs) {
      const HeisenbergForce hf = heisenberg_force(st, E, uk);
      heis = std::max(heis, (hf.breakdown.f1 - force_f1(st, E, uk)).norm());
      heis = std::max(heis, (hf.breakdown.f2 - force_f2(st, E, uk)).norm());
      heis = std::max(heis, (hf.breakdown.f_ext + uk.e_charge * E.at(st.r)).norm());
    }
  }
  rep.expect("classical.f1_uniform_zero", f1_uniform, 0.0, "exactly zero for uniform E");
  rep.expect("classical.heisenberg_vs_f1_f2", heis, 1e-10, "uniform and linear-gradient fields");

  // Free particle.
  UnitSystem free;
  free.G = 0.3;
  const ParticleState st0{{1, -2, 0.5}, {0.7, 0.3, -0.2}, RealVec3(1, 1, 0).normalized(), 0};
  const TrajectorySeries fs = integrate_trajectory(st0, EFieldSpec::uniform(RealVec3::Zero()), free, 0.05, 200);
  const ParticleState& last = fs.states.back();
  double free_err = (last.r - (st0.r + st0.p / free.mass * last.t)).norm();
  free_err = std::max({free_err, (last.p - st0.p).norm(), (last.s - st0.s).norm()});
  rep.expect("classical.free_particle", free_err, 1e-12);

  // Fourth-order convergence on the spin-Hall setup.
  UnitSystem uh;
  uh.G = 0.3;
  const EFieldSpec ez = EFieldSpec::uniform({0, 0, 1});
  const ParticleState sh{{0, 0, 0}, {2, 0, 0}, {0, 0, 1}, 0};
  const double T = 4.0;
  const ParticleState fine = integrate_trajectory(sh, ez, uh, 0.1 / 16, 16 * 40).states.back();
  std::vector<double> dts, errs;
  for (int k = 0; k < 3; ++k) {
    const int steps = 40 << k;
    const ParticleState end = integrate_trajectory(sh, ez, uh, T / steps, steps).states.back();
    dts.push_back(T / steps);
    errs.push_back(std::max({(end.r - fine.r).norm(), (end.p - fine.p).norm(), (end.s - fine.s).norm()}));
  }
  const double order4 = loglog_slope(dts, errs);
  rep.expect("classical.rk4_order", 3.8 - order4, 0.0, "observed order " + format_double(order4) + " >= 3.8");

  // Opposite spins drift to opposite sides.
  ParticleState down = sh;
  down.s = -sh.s;
  const double y_up = integrate_trajectory(sh, ez, uh, 0.01, 400).states.back().r.y();
  const double y_dn = integrate_trajectory(down, ez, uh, 0.01, 400).states.back().r.y();
  rep.expect("classical.spin_hall_antisymmetry", std::abs(y_up + y_dn), 1e-10, "y(+z) = -y(-z)");

  const TrajectorySeries longrun = integrate_trajectory(sh, ez, uh, 1e-3, 10000);
  rep.expect("classical.spin_norm_drift", longrun.max_spin_drift, 1e-9, "1e4 steps at dt = 1e-3");

  // Karplus anomalous velocity compared with the velocity-operator term.
  UnitSystem uv;
  uv.G = 0.25;
  const RealVec3 E(0, 0, 1.2), s(1, 0, 0);
  const RealVec3 karplus = karplus_anomalous_velocity(RealVec3::Zero(), -uv.e_charge * E, uv, s);
  const RealVec3 op_term = mean_velocity({RealVec3::Zero(), RealVec3::Zero(), s, 0}, EFieldSpec::uniform(E), uv);
  const double ratio = karplus.dot(op_term) / op_term.squaredNorm();
  rep.info("velocity.karplus_over_operator_ratio", ratio,
           "anomalous Karplus term / -(e/m)<A_r>; brute force gives -2 (published text states a factor 2)");
  const RealVec3 printed14 = -(2.0 * uv.G * uv.e_charge / uv.mass) * E.cross(s);
  rep.info("printed_form.karplus_velocity", (karplus - printed14).norm(),
           "published anomalous term -(2Ge/m)(E x sigma) has the opposite sign of the brute-force contraction");

  const ParticleState st{{0, 0, 0}, {0.8, -0.3, 0.1}, RealVec3(0.2, 0.5, 0.8).normalized(), 0};
  const RealVec3 printed15 = -force_f2(st, EFieldSpec::uniform({0.1, 0.4, 1.0}), uv);
  rep.info("printed_form.heisenberg_sign", (printed15 - force_f2_closed_form(st, EFieldSpec::uniform({0.1, 0.4, 1.0}), uv)).norm(),
           "published +(e/i hbar)[A_r, H] term yields -f2; -(e/i hbar)[A_r, H] reproduces the commutator form");
  rep.info("printed_form.f1_uniform_remark", 0.0,
           "f1 vanishes for uniform E; the published remark says the converse (typo)");
}

// ---------------------------------------------------------- quantum

void quantum_checks(RunReport& rep, Sampler& rnd) {
  const Grid2D grid{64, 64, 64.0, 64.0, true};
  Fft2d fft(grid.nx, grid.ny);
  ComplexGrid a(grid.nx, grid.ny);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Complex(rnd.uniform(-1, 1), rnd.uniform(-1, 1));
  }
  ComplexGrid b = a;
  fft.forward(b);
  fft.inverse(b);
  rep.expect("quantum.fft_round_trip", (a - b).abs().maxCoeff(), 1e-13);

  const WavepacketSpec spec{{-4, 2, 0}, {0.5, -0.25, 0}, 5.0, RealVec3(1, 0, 1).normalized()};
  const SpinorField psi0 = init_gaussian(spec, grid);
  const ObservableRecord o = observables(psi0);
  double init = (o.mean_r - spec.center).norm();
  init = std::max({init, (o.mean_p - spec.k0).norm(), (o.mean_sigma - spec.spin).norm()});
  rep.expect("quantum.initial_observables", init, 1e-6, "<r>, <p>, <sigma> reproduce the spec");

  UnitSystem u;
  u.G = 0.2;
  const EFieldSpec E = EFieldSpec::uniform({0.03, 0.02, 1.0});
  EvolutionDiagnostics diag;
  const SpinorField evolved = split_step_evolve(psi0, E, u, 0.01, 1000, &diag);
  rep.expect("quantum.norm_conservation", std::abs(evolved.norm() - 1.0), 1e-10, "1000 steps");

  UnitSystem u0;
  const EFieldSpec drive = EFieldSpec::uniform({0.05, -0.03, 0.0});
  const double t_end = 2.0;
  const ObservableRecord od = observables(split_step_evolve(psi0, drive, u0, 0.01, 200), t_end);
  const RealVec3 p_expected = spec.k0 - t_end * RealVec3(0.05, -0.03, 0.0);
  rep.expect("quantum.uniform_drive_momentum", (od.mean_p - p_expected).norm(), 1e-6, "<p>(t) = p0 - eEt at G = 0");

  const EFieldSpec inplane = EFieldSpec::uniform({0.3, 0.2, 1.0});
  const double T = 2.0;
  const auto end_state = [&](int steps) {
    const ObservableRecord r = observables(split_step_evolve(psi0, inplane, u, T / steps, steps), T);
    return std::pair{r.mean_r, r.mean_sigma};
  };
  const auto ref = end_state(160);
  std::vector<double> dts, errs;
  for (int steps : {20, 40}) {
    const auto s = end_state(steps);
    dts.push_back(T / steps);
    errs.push_back(std::max((s.first - ref.first).norm(), (s.second - ref.second).norm()));
  }
  const double order2 = loglog_slope(dts, errs);
  rep.expect("quantum.split_step_order", 1.9 - order2, 0.0, "observed order " + format_double(order2) + " >= 1.9");
}

}  // namespace

double sigma_cross_mismatch(CrossOrder order) {
  const OpVec3 s = OpVec3::sigma();
  return distance(op_cross(s, s, order), s * (2.0 * kI));
}

double f2_lorentz_mismatch(std::uint64_t seed, int n, CrossOrder order) {
  Sampler rnd(seed ^ 0x9e3779b97f4a7c15ULL);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    UnitSystem u;
    u.G = rnd.uniform(0.01, 1.0);
    const EFieldSpec E = EFieldSpec::uniform(rnd.vec(2.0));
    const ParticleState st{RealVec3::Zero(), rnd.vec(3.0), rnd.unit(), 0.0};
    worst = std::max(worst, rel_error(force_f2_lorentz(st, E, u, order), force_f2_closed_form(st, E, u)));
  }
  return worst;
}

double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors) {
  const std::size_t n = std::min(steps.size(), errors.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(steps[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

RunReport run_verify(const VerifyOptions& options) {
  RunReport rep;
  rep.kind = "verify";
  const int n = std::max(options.n_random, 1);
  rep.config = {{"verify",
                 {{"seed", std::to_string(options.seed)},
                  {"cases", std::to_string(n)},
                  {"cross_order", options.cross_order == CrossOrder::LeftFirst ? "left_first" : "right_first"}}}};
  std::string canonical;
  for (const auto& [k, v] : rep.config.front().second) canonical += k + "=" + v + "\n";
  rep.digest = fnv1a_hex(canonical);

  Sampler rnd(options.seed);
  pauli_checks(rep, rnd, n, options.cross_order);
  gauge_checks(rep, rnd, n, options.cross_order);
  precession_checks(rep, rnd, n);
  classical_checks(rep, rnd, n, options.seed, options.cross_order);
  quantum_checks(rep, rnd);
  if (options.cross_order != CrossOrder::LeftFirst) {
    rep.notes.push_back("cross-product operand order reversed on purpose (mutation run)");
  }
  return rep;
}

}  // namespace spingauge
