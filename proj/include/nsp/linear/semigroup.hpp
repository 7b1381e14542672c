#pragma once

namespace nsp::linear {

struct SemigroupScanOptions {
  double r_max = 1.0;
  double t_max = 100.0;
  int r_samples = 200;
  int t_samples = 2000;
  bool poisson = true;
};

struct SemigroupBound {
  double c0 = 0.0;        // candidate decay constant
  double C = 0.0;         // smallest C with |E(t)| <= C exp(-c0 r^2 t) on the scan
  double C_limit = 0.0;   // bound tested against
  bool pass = false;      // C <= C_limit
  double best_c0 = 0.0;   // largest c0 in [0, 1] passing with C_limit
};

/// Scans operator norms of mode_exponential over (r, t) in (0, r_max] x
/// [0, t_max] and reports the constants of a heat-like bound.
SemigroupBound verify_semigroup_bound(double c0, double C_limit, const SemigroupScanOptions& opt);

/// max over the scan of |E(r, t)| exp(c0 r^2 t).
double semigroup_constant(double c0, const SemigroupScanOptions& opt);

}  // namespace nsp::linear
