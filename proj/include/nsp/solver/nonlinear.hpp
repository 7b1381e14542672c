#pragma once

#include "nsp/fluid_state.hpp"
#include "nsp/solver/params.hpp"

namespace nsp::solver {

struct Nonlinearities {
  spectral::SpectralField f;
  spectral::VectorField g;
};

/// f = -div(a u) and
/// g = -u.grad u - I(a) A u - k(a) grad a + (1 + a)^-1 div(2 mu~(a) D(u) + lambda~(a) div u Id),
/// products in physical space, every product dealiased. Throws VacuumError
/// when 1 + a <= 0 at a grid point.
Nonlinearities compute_nonlinearities(const FluidState& state, const PhysicalParams& params);

/// A u = mu_inf Lap u + (lambda_inf + mu_inf) grad div u.
spectral::VectorField lame_operator(const spectral::VectorField& u, const PhysicalParams& params);

/// psi = (-Lap)^-1 a with zero mean; a must be mean-zero.
spectral::SpectralField poisson_potential(const spectral::SpectralField& a);

/// w = grad (-Lap)^-1 (a - div u). Diagnostic only.
spectral::VectorField effective_velocity(const FluidState& state);

/// Smallest value of 1 + a over the grid points.
double min_density(const spectral::SpectralField& a);

/// Throws VacuumError when min_density(a) <= 0.
void check_vacuum(const spectral::SpectralField& a);

}  // namespace nsp::solver
