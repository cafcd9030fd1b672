#pragma once

#include <Eigen/Dense>

#include "spingauge/pauli.hpp"

namespace spingauge {

/// Dimensionless unit system. The spin-orbit constant hbar/(2 g m c^2) is
/// absorbed into the single coupling G.
struct UnitSystem {
  double hbar = 1.0;
  double e_charge = 1.0;
  double mass = 1.0;
  double G = 0.0;

  /// Throws ValidationError naming the first non-positive constant.
  void validate() const;
};

/// Static electric field E(r) = E0 + gradient * r.
struct EFieldSpec {
  enum class Kind { Uniform, LinearGradient };

  Kind kind = Kind::Uniform;
  RealVec3 E0 = RealVec3::Zero();
  Eigen::Matrix3d gradient = Eigen::Matrix3d::Zero();
  /// Explicit time derivative of E. Only static fields are supported by the
  /// dynamics; a nonzero rate is rejected with UnsupportedFieldSpec.
  RealVec3 rate = RealVec3::Zero();

  static EFieldSpec uniform(const RealVec3& e0);
  static EFieldSpec linear(const RealVec3& e0, const Eigen::Matrix3d& grad);

  RealVec3 at(const RealVec3& r) const;
  bool is_static() const { return rate.isZero(0.0); }
};

/// Non-Abelian curvature split into its curl and self-cross parts.
struct Curvature {
  OpVec3 curl_part;
  OpVec3 cross_part;
  OpVec3 total;
};

/// Smallest accepted finite-difference step.
inline constexpr double kMinStep = 1e-12;
/// Default finite-difference step for curls and gradients.
inline constexpr double kDefaultStep = 1e-4;

void require_step(double h);

/// G (E x sigma) as an operator vector for a given field value.
OpVec3 gauge_from_field(const RealVec3& E, double G);

/// Real-space spin gauge field A_r(r) = G (E(r) x sigma).
OpVec3 build_gauge_r(const EFieldSpec& E, const UnitSystem& u, const RealVec3& r);

/// Real-space gauge field bound to its parameters.
class GaugeFieldR {
 public:
  GaugeFieldR(EFieldSpec field, UnitSystem units) : field_(std::move(field)), units_(units) {}

  OpVec3 at(const RealVec3& r) const { return build_gauge_r(field_, units_, r); }
  const EFieldSpec& field() const { return field_; }
  const UnitSystem& units() const { return units_; }

 private:
  EFieldSpec field_;
  UnitSystem units_;
};

/// F_r = curl A_r - (i e / hbar) A_r x A_r. The curl uses central differences
/// with step h; for a uniform field it is the exact zero operator.
Curvature curvature_r(const GaugeFieldR& A, const RealVec3& r, double h = kDefaultStep);

/// k-space gauge field A_k = (G/m) (sigma x p).
OpVec3 build_gauge_k(const RealVec3& p, const UnitSystem& u);

class GaugeFieldK {
 public:
  explicit GaugeFieldK(UnitSystem units) : units_(units) {}

  OpVec3 at(const RealVec3& p) const { return build_gauge_k(p, units_); }
  const UnitSystem& units() const { return units_; }

 private:
  UnitSystem units_;
};

/// Curl of A_k with respect to the wavevector k = p / hbar, by central
/// differences with step h in k.
OpVec3 curl_k(const GaugeFieldK& A, const RealVec3& p, double h = kDefaultStep);

/// A_k x A_k by direct operator evaluation.
OpVec3 cross_self_k(const RealVec3& p, const UnitSystem& u);

/// F_k = curl_k A_k - i A_k x A_k.
Curvature curvature_k(const RealVec3& p, const UnitSystem& u, double h = kDefaultStep);

}  // namespace spingauge
