#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>

#include "nsp/linear/propagator.hpp"
#include "nsp/norm_series.hpp"

namespace nsp::linear {

/// Radial initial spectra on R^d: density a0(r), compressible velocity
/// omega0(r) = |xi|^-1 i xi . u0, and the solenoidal amplitude Omega0(r).
struct RadialProfile {
  int dim = 3;
  std::function<std::complex<double>(double)> a0;
  std::function<std::complex<double>(double)> omega0;
  std::function<std::complex<double>(double)> solenoidal0;
  /// Compact support radius; when absent the cutoff is found numerically.
  std::optional<double> support;

  static RadialProfile indicator_velocity(int dim, double radius);
};

struct RadialOptions {
  double s = 0.0;        // norm of Lambda^s
  double rel_tol = 1e-10;
  LinearParams params;
};

struct RadialResult {
  NormSeries series;  // entries "a" and "u" (suffixed by s when s != 0)
  double r_cut = 0.0;
  double tail_bound = 0.0;  // relative size of the discarded tail at t = 0
};

/// ||Lambda^s a(t)||_{L^2(R^d)} and ||Lambda^s u(t)||_{L^2(R^d)} from the exact
/// per-frequency solution, by adaptive Gauss-Kronrod quadrature in r.
RadialResult radial_decay_quadrature(const RadialProfile& profile, std::span<const double> times,
                                     const RadialOptions& opt);

/// Surface area of the unit sphere in R^d.
double sphere_area(int dim);

}  // namespace nsp::linear
