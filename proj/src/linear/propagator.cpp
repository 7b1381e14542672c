#include "nsp/linear/propagator.hpp"

#include <cmath>

#include "nsp/error.hpp"
#include "nsp/spectral/operators.hpp"

namespace nsp::linear {

using spectral::Complex;

LinearPropagator::LinearPropagator(const spectral::Grid& g, double t, const LinearParams& params)
    : grid_(g), t_(t) {
  if (!(t >= 0.0)) throw DomainError("propagation time must be nonnegative");
  if (!(params.mu_inf > 0.0)) throw DomainError("shear viscosity must be positive");
  const auto& lat = spectral::lattice(g);
  pair_.assign(lat.size(), Mat2::identity());
  heat_.assign(lat.size(), 1.0);
  for (std::size_t i = 1; i < lat.size(); ++i) {
    if (lat.nyquist[i]) continue;
    const double r = lat.radius[i];
    pair_[i] = mode_exponential(r, t, params.poisson);
    heat_[i] = std::exp(-params.mu_inf * r * r * t);
  }
}

void LinearPropagator::apply(FluidState& state) const {
  spectral::require_same_grid(grid_, state.grid(), "linear propagation");
  if (!state.a.is_mean_zero()) throw DomainError("linear propagation requires a mean-zero density");
  const auto& lat = spectral::lattice(grid_);
  const int d = grid_.dim;
  constexpr Complex I{0.0, 1.0};
  state.a[0] = 0.0;
  for (std::size_t i = 1; i < lat.size(); ++i) {
    if (lat.nyquist[i]) {
      state.a[i] = 0.0;
      for (int c = 0; c < d; ++c) state.u[c][i] = 0.0;
      continue;
    }
    const auto& k = lat.k[i];
    const double r = lat.radius[i];
    Complex kdotu = 0.0;
    for (int c = 0; c < d; ++c) kdotu += k[c] * state.u[c][i];
    const Complex at = state.a[i] / r;
    const Complex om = I * kdotu / r;
    const Mat2& e = pair_[i];
    const Complex at_new = e.a * at + e.b * om;
    const Complex om_new = e.c * at + e.d * om;
    state.a[i] = r * at_new;
    for (int c = 0; c < d; ++c) {
      const Complex sol = state.u[c][i] - k[c] * kdotu / (r * r);
      state.u[c][i] = heat_[i] * sol - I * (k[c] / r) * om_new;
    }
  }
  state.t += t_;
}

FluidState propagate_linear(const FluidState& state, double t, const LinearParams& params) {
  FluidState out = state;
  LinearPropagator(state.grid(), t, params).apply(out);
  return out;
}

spectral::SpectralField compressible_part(const spectral::VectorField& u) {
  return spectral::lambda_power(spectral::divergence(u), -1.0);
}

spectral::VectorField from_parts(const spectral::SpectralField& omega,
                                 const spectral::VectorField& solenoidal) {
  auto grad = spectral::gradient(spectral::lambda_power(omega, -1.0));
  return solenoidal - grad;
}

}  // namespace nsp::linear
