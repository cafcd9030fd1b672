#pragma once

#include <vector>

#include "spingauge/classical.hpp"
#include "spingauge/fft2d.hpp"
#include "spingauge/gauge_field.hpp"

namespace spingauge {

/// Periodic cell-centred grid: x_i = -lx/2 + i dx, i = 0..nx-1.
struct Grid2D {
  int nx = 256;
  int ny = 256;
  double lx = 128.0;
  double ly = 128.0;
  bool periodic = true;

  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double x(int i) const { return -0.5 * lx + i * dx(); }
  double y(int j) const { return -0.5 * ly + j * dy(); }
  /// Angular wavenumber of FFT bin i along x (standard FFT ordering).
  double kx(int i) const;
  double ky(int j) const;

  /// nx, ny powers of two and >= 16, extents positive.
  void validate() const;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// Two-component spinor amplitudes on a grid, normalized so that
/// sum |psi|^2 dx dy = 1.
struct SpinorField {
  Grid2D grid;
  ComplexGrid up;
  ComplexGrid down;

  double norm() const;
};

struct WavepacketSpec {
  RealVec3 center = RealVec3::Zero();  // z ignored
  RealVec3 k0 = RealVec3::Zero();      // z ignored
  double width = 6.0;                  // std of |psi|^2 per axis
  RealVec3 spin = RealVec3::UnitZ();

  /// Throws UnresolvableWavepacket unless 4 cells <= width <= extent/8.
  void check_resolvable(const Grid2D& grid) const;
};

struct ObservableRecord {
  double t = 0.0;
  double norm = 0.0;
  RealVec3 mean_r = RealVec3::Zero();
  RealVec3 mean_p = RealVec3::Zero();
  RealVec3 mean_sigma = RealVec3::Zero();
  /// NaN when the corresponding sigma_z projection is empty (< 1e-14).
  double y_centroid_up = 0.0;
  double y_centroid_down = 0.0;
  double norm_up = 0.0;
  double norm_down = 0.0;
};

SpinorField init_gaussian(const WavepacketSpec& spec, const Grid2D& grid);

/// Fraction of the norm within `cells` cells of the grid edge.
double boundary_fraction(const SpinorField& psi, int cells = 5);

/// Above this boundary fraction a run is flagged as contaminated.
inline constexpr double kBoundaryWarnFraction = 1e-6;

/// Strang split-step propagator for H = (p - e A_r)^2/2m + e E.r with a
/// uniform field. The 2x2 kinetic propagator of every k-node is precomputed
/// in closed Pauli form.
class SplitStepPropagator {
 public:
  /// Throws UnsupportedFieldSpec for non-uniform or time-dependent fields and
  /// StabilityBound when dt * max|kinetic eigenvalue| / hbar > pi.
  SplitStepPropagator(const Grid2D& grid, const EFieldSpec& E, const UnitSystem& u, double dt);

  void step(SpinorField& psi);
  void advance(SpinorField& psi, int n_steps);

  /// dt * max|kinetic eigenvalue| / hbar.
  double stability_number() const { return stability_; }

 private:
  Grid2D grid_;
  Fft2d fft_;
  ComplexGrid k00_, k01_, k10_, k11_;
  ComplexGrid half_potential_;
  bool has_potential_ = false;
  double stability_ = 0.0;
};

struct EvolutionDiagnostics {
  double max_boundary_fraction = 0.0;
  bool boundary_contamination = false;
};

SpinorField split_step_evolve(const SpinorField& psi, const EFieldSpec& E, const UnitSystem& u,
                              double dt, int n_steps, EvolutionDiagnostics* diag = nullptr);

/// Discrete-sum expectations at time t; <p> from the spectral representation.
ObservableRecord observables(const SpinorField& psi, double t = 0.0, double hbar = 1.0);

/// Maximum deviations between the sampled quantum series and the
/// semiclassical laws. All comparisons use in-plane (x, y) components.
struct EhrenfestReport {
  /// max |d<r>/dt - <p/m - (e/m) A_r>|
  double velocity_residual = 0.0;
  /// max |d<m v>/dt - (f_ext + f1 + f2)| with m v = <p> - e <A_r>.
  double momentum_residual = 0.0;
  /// Same as momentum_residual but against d<p>/dt (canonical momentum).
  double canonical_momentum_residual = 0.0;
  /// max |d<r>/dt - v_Karplus| with dp/dt = -eE.
  double karplus_velocity_residual = 0.0;
  /// max |<r>_quantum - r_classical| over samples.
  double trajectory_deviation = 0.0;
  double trajectory_deviation_over_width = 0.0;
  double max_norm_drift = 0.0;
  double max_boundary_fraction = 0.0;
  bool boundary_contamination = false;
  /// (e A_r)^2 / 2m, the scalar energy the re-arranged Hamiltonian drops.
  double dropped_energy_term = 0.0;
};

struct EhrenfestSeries {
  std::vector<ObservableRecord> records;
  TrajectorySeries classical;
  EhrenfestReport report;
};

EhrenfestSeries ehrenfest_series(const WavepacketSpec& spec, const Grid2D& grid, const EFieldSpec& E,
                                 const UnitSystem& u, double dt, int n_steps, int sample_every);

/// One quantum run with its configuration, as consumed by spinhall_separation.
struct QuantumRun {
  WavepacketSpec spec;
  Grid2D grid;
  EFieldSpec field;
  UnitSystem units;
  double dt = 0.0;
  int n_steps = 0;
  std::vector<ObservableRecord> records;
  EvolutionDiagnostics diagnostics;
};

QuantumRun run_quantum(const WavepacketSpec& spec, const Grid2D& grid, const EFieldSpec& E,
                       const UnitSystem& u, double dt, int n_steps, int sample_every);

/// <y>(up run) - <y>(down run) at the final sample. Positive when the
/// up-spin packet is deflected toward +y.
double spinhall_separation(const QuantumRun& up_run, const QuantumRun& down_run);

}  // namespace spingauge
