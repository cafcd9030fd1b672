#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "spingauge/errors.hpp"
#include "spingauge/pauli.hpp"

using namespace spingauge;

namespace {

const Complex I{0.0, 1.0};

// Independent dense oracle: the Pauli matrices written out by hand.
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

PauliOp random_op(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  return {Complex(d(rng), d(rng)), Complex(d(rng), d(rng)), Complex(d(rng), d(rng)), Complex(d(rng), d(rng))};
}

OpVec3 random_opvec(std::mt19937_64& rng) {
  OpVec3 v;
  for (int i = 0; i < 3; ++i) v[i] = random_op(rng);
  return v;
}

const PauliOp sx = PauliOp::sigma(0), sy = PauliOp::sigma(1), sz = PauliOp::sigma(2), id = PauliOp::identity();

}  // namespace

TEST_CASE("dense oracle: basis matrices match hand-written Pauli matrices") {
  for (int a = 0; a < 3; ++a) CHECK(max_diff(PauliOp::sigma(a).to_matrix(), dense_sigma(a)) == 0.0);
  CHECK(max_diff(id.to_matrix(), Eigen::Matrix2cd::Identity()) == 0.0);
}

TEST_CASE("products follow the Pauli multiplication table") {
  CHECK(distance(mul(sx, sy), sz * I) == 0.0);
  CHECK(distance(mul(sy, sz), sx * I) == 0.0);
  CHECK(distance(mul(sz, sx), sy * I) == 0.0);
  CHECK(distance(mul(sz, sz), id) == 0.0);
  std::mt19937_64 rng(1);
  const PauliOp x = random_op(rng);
  CHECK(distance(mul(id, x), x) == 0.0);
}

TEST_CASE("random products and commutators agree with dense 2x2 algebra") {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const PauliOp a = random_op(rng), b = random_op(rng);
    worst = std::max(worst, max_diff(dense(a * b), dense(a) * dense(b)));
    worst = std::max(worst, max_diff(dense(commutator(a, b)), dense(a) * dense(b) - dense(b) * dense(a)));
    worst = std::max(worst, max_diff(dense(anticommutator(a, b)), dense(a) * dense(b) + dense(b) * dense(a)));
    worst = std::max(worst, max_diff(dense(a.adjoint()), dense(a).adjoint()));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("commutator examples") {
  CHECK(distance(commutator(sx, sy), sz * (2.0 * I)) == 0.0);
  CHECK(distance(commutator(sy, sx), sz * (-2.0 * I)) == 0.0);
  std::mt19937_64 rng(3);
  const PauliOp x = random_op(rng);
  CHECK(commutator(x, x).max_abs() == 0.0);
}

TEST_CASE("anticommutation {sigma_i, sigma_j} = 2 delta_ij") {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(distance(anticommutator(PauliOp::sigma(i), PauliOp::sigma(j)), id * (i == j ? 2.0 : 0.0)) == 0.0);
    }
  }
}

TEST_CASE("matrix round trip and scalar invariants") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const PauliOp a = random_op(rng);
    CHECK(distance(PauliOp::from_matrix(a.to_matrix()), a) <= 1e-14);
    CHECK(std::abs(a.trace() - dense(a).trace()) <= 1e-13);
    CHECK(std::abs(a.det() - dense(a).determinant()) <= 1e-12);
  }
}

TEST_CASE("Hermiticity is decided by the imaginary parts of the coefficients") {
  CHECK(PauliOp({1.0, 0.5, -2.0, 0.25}).is_hermitian());
  CHECK_FALSE(PauliOp({1.0, Complex(0.5, 1e-6), -2.0, 0.25}).is_hermitian());
  CHECK(PauliOp({Complex(1.0, 1e-12), 0.5, 0.0, 0.0}).is_hermitian());
}

TEST_CASE("sigma x sigma = 2i sigma") {
  const OpVec3 s = OpVec3::sigma();
  CHECK(distance(op_cross(s, s), s * (2.0 * I)) == 0.0);
}

TEST_CASE("op_cross matches the dense epsilon-tensor evaluation") {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int k = 0; k < 300; ++k) {
    const OpVec3 a = random_opvec(rng), b = random_opvec(rng);
    const OpVec3 c = op_cross(a, b);
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, l = (i + 2) % 3;
      worst = std::max(worst, max_diff(dense(c[i]), dense(a[j]) * dense(b[l]) - dense(a[l]) * dense(b[j])));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("op_cross of commuting components vanishes; E = z example") {
  const OpVec3 commuting = OpVec3::lift(RealVec3(0.3, -1.2, 2.0));
  CHECK(op_cross(commuting, commuting).max_abs() == 0.0);

  // z x sigma = (-sigma_y, sigma_x, 0)
  OpVec3 a;
  a[0] = -sy;
  a[1] = sx;
  const OpVec3 c = op_cross(a, a);
  CHECK(c[0].max_abs() == 0.0);
  CHECK(c[1].max_abs() == 0.0);
  CHECK(distance(c[2], sz * (2.0 * I)) == 0.0);
}

TEST_CASE("reversed operand order flips the sign of a non-commuting cross product") {
  const OpVec3 s = OpVec3::sigma();
  CHECK(distance(op_cross(s, s, CrossOrder::RightFirst), s * (-2.0 * I)) == 0.0);
}

TEST_CASE("op_dot examples") {
  CHECK(distance(op_dot(RealVec3(0, 0, 1), OpVec3::sigma()), sz) == 0.0);
  CHECK(op_dot(RealVec3(RealVec3::Zero()), OpVec3::sigma()).max_abs() == 0.0);
  // p . G (E x sigma) with p = x, E = z, G = 1 gives sigma . (p x E) = -sigma_y.
  OpVec3 a;
  a[0] = -sy;
  a[1] = sx;
  CHECK(distance(op_dot(RealVec3(1, 0, 0), a), -sy) == 0.0);
  CHECK(distance(op_dot(RealVec3(1, 0, 0), a), sigma_dot(RealVec3(RealVec3(1, 0, 0).cross(RealVec3(0, 0, 1))))) == 0.0);
}

TEST_CASE("op_dot of two operator vectors keeps left-to-right order") {
  std::mt19937_64 rng(11);
  const OpVec3 a = random_opvec(rng), b = random_opvec(rng);
  Eigen::Matrix2cd oracle = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 3; ++i) oracle += dense(a[i]) * dense(b[i]);
  CHECK(max_diff(dense(op_dot(a, b)), oracle) <= 1e-13);
}

TEST_CASE("exp_i examples") {
  CHECK(distance(exp_i(PauliOp::zero()), id) == 0.0);
  CHECK(distance(exp_i(sz * std::numbers::pi), -id) <= 1e-15);
  const PauliOp expected = id * std::cos(0.3) + sy * (I * std::sin(0.3));
  CHECK(distance(exp_i(sy * 0.3), expected) <= 1e-16);
  const Eigen::Matrix2cd oracle = Eigen::Matrix2cd(I * 0.3 * dense_sigma(1)).exp();
  CHECK(max_diff(dense(exp_i(sy * 0.3)), oracle) <= 1e-15);
}

TEST_CASE("exp_i agrees with the scaling-and-squaring matrix exponential") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst = 0.0, unitary = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double scale = std::pow(10.0, -8.0 + 9.0 * (d(rng) + 1.0) / 2.0);
    const PauliOp h(Complex(scale * d(rng)), Complex(scale * d(rng)), Complex(scale * d(rng)), Complex(scale * d(rng)));
    const PauliOp u = exp_i(h);
    worst = std::max(worst, max_diff(dense(u), Eigen::Matrix2cd(I * dense(h)).exp()));
    unitary = std::max(unitary, max_diff(dense(u) * dense(u).adjoint(), Eigen::Matrix2cd::Identity()));
  }
  CHECK(worst <= 1e-13);
  CHECK(unitary <= 1e-13);
}

TEST_CASE("exp_i rejects non-Hermitian generators") {
  const PauliOp bad(Complex(0.0), Complex(0.0, 0.5), Complex(0.0), Complex(0.0));
  try {
    (void)exp_i(bad);
    FAIL("expected NonHermitianInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitianInput);
  }
}

TEST_CASE("bloch vectors of standard states") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((bloch({1.0, 0.0}) - RealVec3(0, 0, 1)).norm() <= 1e-15);
  CHECK((bloch({r, r}) - RealVec3(1, 0, 0)).norm() <= 1e-15);
  CHECK((bloch({r, Complex(0, r)}) - RealVec3(0, 1, 0)).norm() <= 1e-15);
  CHECK_THROWS_AS(bloch({1.0, 1.0}), Error);
}

TEST_CASE("expectation values") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(expectation(SpinState{1.0, 0.0}, sz) - 1.0) <= 1e-15);
  CHECK(std::abs(expectation(SpinState{1.0, 0.0}, sx)) <= 1e-15);
  const PauliOp x(Complex(0.7), Complex(-0.2), Complex(1.1), Complex(0.4));
  CHECK(std::abs(expectation(SpinState{r, r}, x) - (0.7 - 0.2)) <= 1e-15);
  try {
    (void)expectation(SpinState{0.5, 0.0}, sz);
    FAIL("expected UnnormalizedState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnnormalizedState);
  }
}

TEST_CASE("Bloch-vector expectation is linear and matches the spinor form") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const RealVec3 s = RealVec3(n(rng), n(rng), n(rng)).normalized();
    const PauliOp x(Complex(n(rng)), Complex(n(rng)), Complex(n(rng)), Complex(n(rng)));
    CHECK(std::abs(expectation(s, x) - expectation(SpinState::from_bloch(s), x)) <= 1e-13);
  }
}

TEST_CASE("rotation operator rotates Bloch vectors by the right-hand rule") {
  // Quarter turn about z takes x to y.
  const SpinState x_up = SpinState::from_bloch({1, 0, 0});
  const RealVec3 turned = bloch(apply(rotation_operator({0, 0, std::numbers::pi / 2}), x_up));
  CHECK((turned - RealVec3(0, 1, 0)).norm() <= 1e-15);
}
