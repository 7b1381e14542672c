#pragma once

#include <vector>

namespace nsp::decay {

/// Exponents of the decay framework. s0 and alpha are derived, never stored.
struct DecayParams {
  int d = 3;
  double p = 2.0;
  double s1 = 1.5;
  double epsilon = 0.01;
  int j0 = 0;
  /// Regularities sampled for the sup over s; empty selects the default grid
  /// {eps - s1, 0, d/2 - 1, d/2, d/2 + 1}.
  std::vector<double> s_samples;

  /// Throws ConfigError naming the violated constraint:
  /// "2 <= p <= min(4, 2d/(d-2))", "p != 4 if d = 2", "1 - d/2 < s1 <= s0",
  /// "0 < epsilon <= 0.1", "eps - s1 <= s <= d/2 + 1" for custom samples.
  void validate() const;

  double s0() const { return 2.0 * d / p - 0.5 * d; }
  double alpha() const { return s1 + 0.5 * d + 0.5 - epsilon; }
  double s_min() const { return epsilon - s1; }
  double s_max() const { return 0.5 * d + 1.0; }
  /// Sorted, de-duplicated sample grid restricted to [s_min, s_max].
  std::vector<double> sample_grid() const;
};

/// <t> = sqrt(1 + t^2).
double japanese(double t);

}  // namespace nsp::decay
