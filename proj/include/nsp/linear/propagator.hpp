#pragma once

#include <vector>

#include "nsp/fluid_state.hpp"
#include "nsp/linear/mode.hpp"

namespace nsp::linear {

struct LinearParams {
  double mu_inf = 0.25;
  bool poisson = true;
};

/// Exact linear flow over a fixed time span on one grid. Per mode the pair
/// (a-tilde, omega) = (Lambda^-1 a, Lambda^-1 div u) moves with
/// mode_exponential and the solenoidal part of u is damped by exp(-mu r^2 t).
/// Nyquist modes are dropped.
class LinearPropagator {
 public:
  LinearPropagator(const spectral::Grid& g, double t, const LinearParams& params);

  /// Advances a state in place; requires a mean-zero density.
  void apply(FluidState& state) const;

  double span() const { return t_; }
  const Mat2& mode_factor(std::size_t i) const { return pair_[i]; }
  double heat_factor(std::size_t i) const { return heat_[i]; }

 private:
  spectral::Grid grid_;
  double t_;
  std::vector<Mat2> pair_;
  std::vector<double> heat_;
};

FluidState propagate_linear(const FluidState& state, double t, const LinearParams& params);

/// Splits u into (omega, P u) and rebuilds it; exposed for the solver and tests.
spectral::SpectralField compressible_part(const spectral::VectorField& u);  // omega
spectral::VectorField from_parts(const spectral::SpectralField& omega, const spectral::VectorField& solenoidal);

}  // namespace nsp::linear
