#pragma once

#include <vector>

#include "spingauge/gauge_field.hpp"

namespace spingauge {

/// Semiclassical particle. p is the canonical momentum; the mechanical
/// momentum is m<v> = p - e G (E x s).
struct ParticleState {
  RealVec3 r = RealVec3::Zero();
  RealVec3 p = RealVec3::Zero();
  RealVec3 s = RealVec3::UnitZ();
  double t = 0.0;
};

/// Force on the mechanical momentum m<v>. total = f_ext + f1 + f2.
struct ForceBreakdown {
  RealVec3 f_ext = RealVec3::Zero();
  RealVec3 f1 = RealVec3::Zero();
  RealVec3 f2 = RealVec3::Zero();
  RealVec3 total = RealVec3::Zero();
};

/// Heisenberg-picture force. The orbital term quadratic in the gauge field
/// (-e times the Poisson bracket of A with the spin-orbit energy) is kept
/// apart from the breakdown; it vanishes for uniform fields.
struct HeisenbergForce {
  ForceBreakdown breakdown;
  RealVec3 orbital_second_order = RealVec3::Zero();
};

struct TrajectorySeries {
  std::vector<ParticleState> states;
  std::vector<ForceBreakdown> forces;
  /// Largest | |s| - 1 | seen before per-step renormalization.
  double max_spin_drift = 0.0;
};

struct TrajectoryOptions {
  /// Project out the z components of dr/dt and dp/dt (2DEG confinement).
  bool confine_2d = false;
  /// Finite-difference step used for the recorded f1.
  double fd_step = kDefaultStep;
};

/// (e/m) <grad(p.A_r) - (p.grad) A_r>, by central differences of A_r.
RealVec3 force_f1(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u,
                  double h = kDefaultStep);

/// (-i e^2 / m hbar) <[A_r, p.A_r]> evaluated componentwise.
RealVec3 force_f2(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u);

/// Closed form (2 e^2 G^2 / m hbar) <sigma.E> (p x E).
RealVec3 force_f2_closed_form(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u);

/// Lorentz-type form e (p/m) x <-(i e/hbar) A_r x A_r>. The product ordering
/// inside A_r x A_r decides the sign.
RealVec3 force_f2_lorentz(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u,
                          CrossOrder order = CrossOrder::LeftFirst);

ForceBreakdown force_breakdown(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u,
                               double h = kDefaultStep);

/// Force from the Heisenberg equation for m v = p - e A_r with
/// H = p^2/2m - (e/m) p.A_r + e E.r, evaluated through operator symbols,
/// finite-difference Poisson brackets and spin commutators.
HeisenbergForce heisenberg_force(const ParticleState& state, const EFieldSpec& E,
                                 const UnitSystem& u, double h = kDefaultStep);

/// v = p/m - (e/m) A_r(r).
OpVec3 velocity_operator(const RealVec3& p, const EFieldSpec& E, const UnitSystem& u,
                         const RealVec3& r = RealVec3::Zero());

/// <v> in the pure spin state with Bloch vector s.
RealVec3 mean_velocity(const ParticleState& state, const EFieldSpec& E, const UnitSystem& u);

/// v = p/m - (1/hbar) <dp/dt x F_k>.
RealVec3 karplus_anomalous_velocity(const RealVec3& p, const RealVec3& dpdt, const UnitSystem& u,
                                    const RealVec3& s);

/// Omega with ds/dt = Omega x s, extracted from (1/i hbar)[sigma, H].
RealVec3 spin_precession_rate(const RealVec3& p, const RealVec3& E, const UnitSystem& u);

/// Fixed-step RK4 for (r, p, s); s is renormalized after every step.
TrajectorySeries integrate_trajectory(const ParticleState& init, const EFieldSpec& E,
                                      const UnitSystem& u, double dt, int n_steps,
                                      const TrajectoryOptions& options = {});

}  // namespace spingauge
