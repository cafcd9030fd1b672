#pragma once

// 2x2 operator algebra in the Pauli basis {I, sigma_x, sigma_y, sigma_z}.
//
// Operators are stored as four complex coefficients. Products, commutators and
// exponentials are evaluated in coefficient space; the dense 2x2 matrix is a
// derived view (to_matrix/from_matrix) used for oracle checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "spingauge/errors.hpp"

namespace spingauge {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using RealVec3 = Vec3<double>;
using Complex = std::complex<double>;

/// Default absolute tolerance on imaginary parts for Hermiticity tests.
inline constexpr double kHermitianTol = 1e-10;

/// Spin states must be normalized to this tolerance.
inline constexpr double kStateNormTol = 1e-12;

template <typename Scalar>
struct Pauli {
  using complex_type = std::complex<Scalar>;
  using Matrix2 = Eigen::Matrix<complex_type, 2, 2>;

  complex_type c0{};
  complex_type cx{};
  complex_type cy{};
  complex_type cz{};

  static Pauli zero() { return {}; }
  static Pauli identity() { return {complex_type(1), {}, {}, {}}; }
  static Pauli scalar(complex_type c) { return {c, {}, {}, {}}; }

  /// sigma_axis for axis in {0, 1, 2}.
  static Pauli sigma(int axis) {
    Pauli p;
    p.coeff(axis) = complex_type(1);
    return p;
  }

  /// a . sigma for a complex 3-vector a.
  template <typename Derived>
  static Pauli from_vector(const Eigen::MatrixBase<Derived>& a, complex_type c0 = {}) {
    return {c0, complex_type(a(0)), complex_type(a(1)), complex_type(a(2))};
  }

  complex_type& coeff(int axis) { return axis == 0 ? cx : (axis == 1 ? cy : cz); }
  const complex_type& coeff(int axis) const { return axis == 0 ? cx : (axis == 1 ? cy : cz); }

  Eigen::Matrix<complex_type, 3, 1> vector_part() const { return {cx, cy, cz}; }

  Matrix2 to_matrix() const {
    const complex_type i(0, 1);
    Matrix2 m;
    m << c0 + cz, cx - i * cy,
         cx + i * cy, c0 - cz;
    return m;
  }

  static Pauli from_matrix(const Matrix2& m) {
    const complex_type i(0, 1);
    const complex_type half(Scalar(0.5));
    return {half * (m(0, 0) + m(1, 1)), half * (m(0, 1) + m(1, 0)),
            half * i * (m(0, 1) - m(1, 0)), half * (m(0, 0) - m(1, 1))};
  }

  Pauli adjoint() const { return {std::conj(c0), std::conj(cx), std::conj(cy), std::conj(cz)}; }

  bool is_hermitian(Scalar tol = Scalar(kHermitianTol)) const {
    return std::abs(c0.imag()) <= tol && std::abs(cx.imag()) <= tol &&
           std::abs(cy.imag()) <= tol && std::abs(cz.imag()) <= tol;
  }

  complex_type trace() const { return Scalar(2) * c0; }
  complex_type det() const { return c0 * c0 - cx * cx - cy * cy - cz * cz; }

  /// Largest coefficient magnitude; exact zero iff the operator is zero.
  Scalar max_abs() const {
    return std::max({std::abs(c0), std::abs(cx), std::abs(cy), std::abs(cz)});
  }

  /// Spectral (largest singular value) norm of the dense view.
  Scalar op_norm() const {
    const Scalar fro2 = Scalar(2) * (std::norm(c0) + std::norm(cx) + std::norm(cy) + std::norm(cz));
    const Scalar d = std::abs(det());
    const Scalar disc = std::max(Scalar(0), fro2 * fro2 - Scalar(4) * d * d);
    return std::sqrt(Scalar(0.5) * (fro2 + std::sqrt(disc)));
  }

  Pauli& operator+=(const Pauli& o) {
    c0 += o.c0; cx += o.cx; cy += o.cy; cz += o.cz;
    return *this;
  }
  Pauli& operator-=(const Pauli& o) {
    c0 -= o.c0; cx -= o.cx; cy -= o.cy; cz -= o.cz;
    return *this;
  }
  Pauli& operator*=(complex_type s) {
    c0 *= s; cx *= s; cy *= s; cz *= s;
    return *this;
  }

  friend Pauli operator+(Pauli a, const Pauli& b) { return a += b; }
  friend Pauli operator-(Pauli a, const Pauli& b) { return a -= b; }
  friend Pauli operator-(const Pauli& a) { return {-a.c0, -a.cx, -a.cy, -a.cz}; }
  friend Pauli operator*(Pauli a, complex_type s) { return a *= s; }
  friend Pauli operator*(complex_type s, Pauli a) { return a *= s; }
  friend Pauli operator*(Pauli a, Scalar s) { return a *= complex_type(s); }
  friend Pauli operator*(Scalar s, Pauli a) { return a *= complex_type(s); }

  /// (a0 + a.s)(b0 + b.s) = (a0 b0 + a.b) + (a0 b + b0 a + i a x b).s
  friend Pauli operator*(const Pauli& a, const Pauli& b) {
    const complex_type i(0, 1);
    Pauli r;
    r.c0 = a.c0 * b.c0 + a.cx * b.cx + a.cy * b.cy + a.cz * b.cz;
    r.cx = a.c0 * b.cx + b.c0 * a.cx + i * (a.cy * b.cz - a.cz * b.cy);
    r.cy = a.c0 * b.cy + b.c0 * a.cy + i * (a.cz * b.cx - a.cx * b.cz);
    r.cz = a.c0 * b.cz + b.c0 * a.cz + i * (a.cx * b.cy - a.cy * b.cx);
    return r;
  }

  friend bool operator==(const Pauli&, const Pauli&) = default;
};

using PauliOp = Pauli<double>;

template <typename Scalar>
Pauli<Scalar> mul(const Pauli<Scalar>& a, const Pauli<Scalar>& b) {
  return a * b;
}

template <typename Scalar>
Pauli<Scalar> commutator(const Pauli<Scalar>& a, const Pauli<Scalar>& b) {
  return a * b - b * a;
}

template <typename Scalar>
Pauli<Scalar> anticommutator(const Pauli<Scalar>& a, const Pauli<Scalar>& b) {
  return a * b + b * a;
}

/// Symmetrized (Weyl-ordered) product (ab + ba)/2.
template <typename Scalar>
Pauli<Scalar> sym_product(const Pauli<Scalar>& a, const Pauli<Scalar>& b) {
  return Scalar(0.5) * anticommutator(a, b);
}

/// Max coefficient distance; the comparison used by all tolerance checks.
template <typename Scalar>
Scalar distance(const Pauli<Scalar>& a, const Pauli<Scalar>& b) {
  return (a - b).max_abs();
}

/// exp(i h) for Hermitian h = c0 I + theta n.sigma, evaluated as
/// e^{i c0} (cos(theta) I + i sin(theta) n.sigma).
template <typename Scalar>
Pauli<Scalar> exp_i(const Pauli<Scalar>& h, Scalar hermitian_tol = Scalar(kHermitianTol)) {
  using C = std::complex<Scalar>;
  if (!h.is_hermitian(hermitian_tol)) {
    throw Error(ErrorKind::NonHermitianInput, "exp_i argument is not Hermitian");
  }
  const Scalar a0 = h.c0.real();
  const Scalar ax = h.cx.real(), ay = h.cy.real(), az = h.cz.real();
  const Scalar theta = std::sqrt(ax * ax + ay * ay + az * az);
  // sin(theta)/theta; the series branch avoids 0/0 near the identity.
  const Scalar sinc = theta < Scalar(1e-6) ? Scalar(1) - theta * theta / Scalar(6)
                                           : std::sin(theta) / theta;
  const C phase = std::polar(Scalar(1), a0);
  const C is = C(0, sinc) * phase;
  return {phase * std::cos(theta), is * ax, is * ay, is * az};
}

// ---------------------------------------------------------------------------
// Operator-valued 3-vectors

template <typename Scalar>
struct OpVec {
  std::array<Pauli<Scalar>, 3> comp{};

  Pauli<Scalar>& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
  const Pauli<Scalar>& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }

  Pauli<Scalar>& x() { return comp[0]; }
  Pauli<Scalar>& y() { return comp[1]; }
  Pauli<Scalar>& z() { return comp[2]; }
  const Pauli<Scalar>& x() const { return comp[0]; }
  const Pauli<Scalar>& y() const { return comp[1]; }
  const Pauli<Scalar>& z() const { return comp[2]; }

  static OpVec zero() { return {}; }

  /// Lift a c-number vector to identity-proportional components.
  static OpVec lift(const Vec3<Scalar>& v) {
    OpVec r;
    for (int i = 0; i < 3; ++i) r[i] = Pauli<Scalar>::scalar(v(i));
    return r;
  }

  /// The vector of Pauli matrices (sigma_x, sigma_y, sigma_z).
  static OpVec sigma() {
    OpVec r;
    for (int i = 0; i < 3; ++i) r[i] = Pauli<Scalar>::sigma(i);
    return r;
  }

  bool is_hermitian(Scalar tol = Scalar(kHermitianTol)) const {
    return comp[0].is_hermitian(tol) && comp[1].is_hermitian(tol) && comp[2].is_hermitian(tol);
  }

  Scalar max_abs() const {
    return std::max({comp[0].max_abs(), comp[1].max_abs(), comp[2].max_abs()});
  }

  OpVec& operator+=(const OpVec& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
    return *this;
  }
  OpVec& operator-=(const OpVec& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
    return *this;
  }
  OpVec& operator*=(std::complex<Scalar> s) {
    for (auto& c : comp) c *= s;
    return *this;
  }

  friend OpVec operator+(OpVec a, const OpVec& b) { return a += b; }
  friend OpVec operator-(OpVec a, const OpVec& b) { return a -= b; }
  friend OpVec operator-(OpVec a) { return a *= std::complex<Scalar>(-1); }
  friend OpVec operator*(OpVec a, std::complex<Scalar> s) { return a *= s; }
  friend OpVec operator*(std::complex<Scalar> s, OpVec a) { return a *= s; }
  friend OpVec operator*(OpVec a, Scalar s) { return a *= std::complex<Scalar>(s); }
  friend OpVec operator*(Scalar s, OpVec a) { return a *= std::complex<Scalar>(s); }
  /// Componentwise operator product with a common left factor.
  friend OpVec operator*(const Pauli<Scalar>& left, const OpVec& a) {
    OpVec r;
    for (int i = 0; i < 3; ++i) r[i] = left * a[i];
    return r;
  }
  friend OpVec operator*(const OpVec& a, const Pauli<Scalar>& right) {
    OpVec r;
    for (int i = 0; i < 3; ++i) r[i] = a[i] * right;
    return r;
  }

  friend bool operator==(const OpVec&, const OpVec&) = default;
};

using OpVec3 = OpVec<double>;

template <typename Scalar>
Scalar distance(const OpVec<Scalar>& a, const OpVec<Scalar>& b) {
  return (a - b).max_abs();
}

/// Which factor of each epsilon-contracted product stands on the left.
/// LeftFirst is the library convention; RightFirst exists only so the
/// verification suite can demonstrate that the convention matters.
enum class CrossOrder { LeftFirst, RightFirst };

/// (A x B)_k = eps_kij A_i B_j, with A_i written to the left of B_j.
template <typename Scalar>
OpVec<Scalar> op_cross(const OpVec<Scalar>& a, const OpVec<Scalar>& b,
                       CrossOrder order = CrossOrder::LeftFirst) {
  auto prod = [&](int i, int j) { return order == CrossOrder::LeftFirst ? a[i] * b[j] : b[j] * a[i]; };
  OpVec<Scalar> r;
  r[0] = prod(1, 2) - prod(2, 1);
  r[1] = prod(2, 0) - prod(0, 2);
  r[2] = prod(0, 1) - prod(1, 0);
  return r;
}

/// u x A for a c-number vector u.
template <typename Scalar>
OpVec<Scalar> op_cross(const Vec3<Scalar>& u, const OpVec<Scalar>& a) {
  OpVec<Scalar> r;
  r[0] = u(1) * a[2] - u(2) * a[1];
  r[1] = u(2) * a[0] - u(0) * a[2];
  r[2] = u(0) * a[1] - u(1) * a[0];
  return r;
}

/// A x u for a c-number vector u.
template <typename Scalar>
OpVec<Scalar> op_cross(const OpVec<Scalar>& a, const Vec3<Scalar>& u) {
  return -op_cross(u, a);
}

/// sum_i u_i A_i
template <typename Scalar>
Pauli<Scalar> op_dot(const Vec3<Scalar>& u, const OpVec<Scalar>& a) {
  return u(0) * a[0] + u(1) * a[1] + u(2) * a[2];
}

/// sum_i A_i B_i with A_i leftmost.
template <typename Scalar>
Pauli<Scalar> op_dot(const OpVec<Scalar>& a, const OpVec<Scalar>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// u . sigma
template <typename Scalar>
Pauli<Scalar> sigma_dot(const Vec3<Scalar>& u) {
  return Pauli<Scalar>::from_vector(u);
}

/// Componentwise scaling of an operator vector by c-number weights.
template <typename Scalar>
OpVec<Scalar> scale(const Vec3<Scalar>& w, const OpVec<Scalar>& a) {
  OpVec<Scalar> r;
  for (int i = 0; i < 3; ++i) r[i] = w(i) * a[i];
  return r;
}

/// u (x) P: the operator vector with components u_i P.
template <typename Scalar>
OpVec<Scalar> outer(const Vec3<Scalar>& u, const Pauli<Scalar>& p) {
  OpVec<Scalar> r;
  for (int i = 0; i < 3; ++i) r[i] = u(i) * p;
  return r;
}

template <typename Scalar>
OpVec<Scalar> commutator(const OpVec<Scalar>& a, const Pauli<Scalar>& b) {
  OpVec<Scalar> r;
  for (int i = 0; i < 3; ++i) r[i] = commutator(a[i], b);
  return r;
}

// ---------------------------------------------------------------------------
// Spin-1/2 states

struct SpinState {
  Complex up{1.0, 0.0};
  Complex down{0.0, 0.0};

  double norm2() const { return std::norm(up) + std::norm(down); }

  /// Pure state whose Bloch vector is the direction of s (s need not be unit).
  static SpinState from_bloch(const RealVec3& s);
};

inline SpinState SpinState::from_bloch(const RealVec3& s) {
  const double n = s.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::UnnormalizedSpin, "Bloch vector must be finite and nonzero");
  }
  const RealVec3 u = s / n;
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double phi = std::atan2(u.y(), u.x());
  return {Complex(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), phi)};
}

inline void require_normalized(const SpinState& s) {
  if (std::abs(s.norm2() - 1.0) > kStateNormTol) {
    throw Error(ErrorKind::UnnormalizedState, "spin state norm deviates from 1");
  }
}

inline SpinState apply(const PauliOp& op, const SpinState& s) {
  const auto m = op.to_matrix();
  return {m(0, 0) * s.up + m(0, 1) * s.down, m(1, 0) * s.up + m(1, 1) * s.down};
}

/// (<sigma_x>, <sigma_y>, <sigma_z>)
inline RealVec3 bloch(const SpinState& s) {
  require_normalized(s);
  const Complex cross = std::conj(s.up) * s.down;
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(s.up) - std::norm(s.down)};
}

/// <s|X|s>
inline Complex expectation(const SpinState& s, const PauliOp& x) {
  const RealVec3 b = bloch(s);
  return x.c0 + x.cx * b.x() + x.cy * b.y() + x.cz * b.z();
}

/// Expectation in the pure state with Bloch vector s, |s| = 1.
/// Mean-field shortcut used by the semiclassical dynamics.
inline Complex expectation(const RealVec3& s, const PauliOp& x) {
  return x.c0 + x.cx * s.x() + x.cy * s.y() + x.cz * s.z();
}

inline RealVec3 expectation(const RealVec3& s, const OpVec3& a) {
  return {expectation(s, a[0]).real(), expectation(s, a[1]).real(), expectation(s, a[2]).real()};
}

/// SU(2) element exp(-i (phi/2) n.sigma) that rotates Bloch vectors by the
/// rotation vector phi n.
inline PauliOp rotation_operator(const RealVec3& rotation_vector) {
  return exp_i(sigma_dot<double>(-0.5 * rotation_vector));
}

}  // namespace spingauge
