#pragma once

#include <functional>
#include <span>

#include "spingauge/gauge_field.hpp"

namespace spingauge {

struct PathSegment {
  RealVec3 r_start = RealVec3::Zero();
  RealVec3 r_end = RealVec3::Zero();
};

/// Local SU(2) phase lambda = G * integral(dr x E).
struct PhaseVector {
  RealVec3 lambda = RealVec3::Zero();
};

/// U = exp(i (e/hbar) sigma . lambda); unitary with unit determinant.
struct Propagator {
  PauliOp U = PauliOp::identity();
};

/// A phase-vector field lambda(r), in units where U = exp(i sigma . lambda).
using LambdaField = std::function<RealVec3(const RealVec3&)>;

/// U dU^dagger along each Cartesian axis, split into its sigma part and the
/// largest identity coefficient (zero for an exact SU(2) field).
struct PureGaugeField {
  OpVec3 sigma_part;
  double scalar_residue = 0.0;
};

/// Phase accumulated along a straight segment. Exact for uniform fields; the
/// midpoint rule is also exact for linear fields since the integrand is linear.
PhaseVector phase_for_segment(const PathSegment& seg, const EFieldSpec& E, const UnitSystem& u);

Propagator propagator(const PhaseVector& phase, const UnitSystem& u = {});

/// Ordered product over the path with n_sub subdivisions per segment; later
/// subsegments multiply on the left.
Propagator path_ordered_product(std::span<const PathSegment> path, const EFieldSpec& E,
                                const UnitSystem& u, int n_sub);

/// U(r) d_mu U^dagger(r) by central differences, U = exp(i sigma . lambda(r)).
PureGaugeField pure_gauge_field(const LambdaField& lambda, const RealVec3& r, double h);

/// Exact gauge field with precession switched off. Shares its evaluation
/// path with build_gauge_r, so the two agree bit for bit.
OpVec3 no_precession_limit(const EFieldSpec& E, const UnitSystem& u, const RealVec3& r);

/// Max operator-norm component of the curvature of the Hermitian connection
/// A = i U dU^dagger, using nested central differences with step h.
double pure_gauge_curvature_check(const LambdaField& lambda, const RealVec3& r, double h);

/// Rotation vector of the spin precession, Omega = -(2 e G / m hbar) (p x E),
/// so that ds/dt = Omega x s.
RealVec3 precession_vector(const RealVec3& p, const RealVec3& E, const UnitSystem& u);

/// Rotate the Bloch vector s through Omega dt. s must be a unit vector.
RealVec3 precess_bloch(const RealVec3& s, const RealVec3& p, const RealVec3& E,
                       const UnitSystem& u, double dt);

/// Rodrigues rotation of v by the rotation vector w.
RealVec3 rotate(const RealVec3& v, const RealVec3& w);

}  // namespace spingauge
