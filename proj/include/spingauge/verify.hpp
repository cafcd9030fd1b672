#pragma once

// Identity suite over every module: fixed cases plus seeded random batches.
// Deviations of published closed forms from the brute-force values are
// reported as `info` entries and never fail the suite.

#include <cstdint>

#include "spingauge/outputs.hpp"
#include "spingauge/pauli.hpp"

namespace spingauge {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int n_random = 100;
  /// Operand order inside A x A. RightFirst is a deliberate mutation used to
  /// show that the suite catches a reversed cross product.
  CrossOrder cross_order = CrossOrder::LeftFirst;
};

RunReport run_verify(const VerifyOptions& options);

/// Largest relative mismatch between the Lorentz-type form of f2 (built with
/// the given cross-product order) and the closed form, over n random cases.
double f2_lorentz_mismatch(std::uint64_t seed, int n, CrossOrder order);

/// Largest |sigma x sigma - 2 i sigma| with the given cross-product order.
double sigma_cross_mismatch(CrossOrder order);

/// Least-squares slope of log(err) against log(step) over the given points.
double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors);

}  // namespace spingauge
