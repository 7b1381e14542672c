#pragma once

#include "nsp/spectral/field.hpp"

namespace nsp {

/// Perturbation (a, u) of the equilibrium (1, 0) at time t.
struct FluidState {
  spectral::SpectralField a;
  spectral::VectorField u;
  double t = 0.0;

  FluidState() = default;
  explicit FluidState(const spectral::Grid& g)
      : a(g), u(spectral::zero_vector(g)) {}

  const spectral::Grid& grid() const { return a.grid(); }
};

}  // namespace nsp
