#include "nsp/solver/nonlinear.hpp"

#include <algorithm>
#include <string>

#include "nsp/error.hpp"
#include "nsp/spectral/fft.hpp"
#include "nsp/spectral/operators.hpp"

namespace nsp::solver {

using spectral::PhysicalField;
using spectral::SpectralField;
using spectral::VectorField;

namespace {

SpectralField truncated(const PhysicalField& f) {
  SpectralField s = spectral::to_spectral(f);
  spectral::dealias(s);
  return s;
}

}  // namespace

double min_density(const SpectralField& a) {
  const PhysicalField p = spectral::to_physical(a);
  return 1.0 + *std::min_element(p.values.begin(), p.values.end());
}

void check_vacuum(const SpectralField& a) {
  const double m = min_density(a);
  if (!(m > 0.0)) throw VacuumError("vacuum: min(1 + a) = " + std::to_string(m) + " <= 0");
}

VectorField lame_operator(const VectorField& u, const PhysicalParams& params) {
  const auto gd = spectral::gradient(spectral::divergence(u));
  VectorField out = spectral::zero_vector(u.front().grid());
  for (std::size_t c = 0; c < u.size(); ++c)
    out[c] = params.mu_inf * spectral::laplacian(u[c]) + (params.lambda_inf + params.mu_inf) * gd[c];
  return out;
}

SpectralField poisson_potential(const SpectralField& a) { return spectral::inv_neg_laplacian(a); }

VectorField effective_velocity(const FluidState& state) {
  return spectral::gradient(spectral::inv_neg_laplacian(state.a - spectral::divergence(state.u)));
}

Nonlinearities compute_nonlinearities(const FluidState& state, const PhysicalParams& params) {
  const auto& g = state.grid();
  const int d = g.dim;
  const PhysicalField a = spectral::to_physical(state.a);
  const std::size_t np = a.values.size();
  for (double v : a.values)
    if (!(1.0 + v > 0.0)) throw VacuumError("vacuum: 1 + a <= 0 at a grid point");

  std::vector<PhysicalField> u(d);
  std::vector<std::vector<PhysicalField>> du(d, std::vector<PhysicalField>(d));
  for (int c = 0; c < d; ++c) {
    u[c] = spectral::to_physical(state.u[c]);
    for (int j = 0; j < d; ++j) du[c][j] = spectral::to_physical(spectral::partial(state.u[c], j));
  }

  Nonlinearities out;
  VectorField flux = spectral::zero_vector(g);
  for (int c = 0; c < d; ++c) {
    PhysicalField au(g);
    for (std::size_t i = 0; i < np; ++i) au.values[i] = a.values[i] * u[c].values[i];
    flux[c] = truncated(au);
  }
  out.f = -1.0 * spectral::divergence(flux);
  spectral::dealias(out.f);

  const VectorField lame = lame_operator(state.u, params);
  const VectorField grad_a = spectral::gradient(state.a);

  VectorField visc;
  const bool variable = params.viscosity != ViscosityModel::constant;
  if (variable) {
    PhysicalField divu(g);
    for (int c = 0; c < d; ++c)
      for (std::size_t i = 0; i < np; ++i) divu.values[i] += du[c][c].values[i];
    visc = spectral::zero_vector(g);
    for (int c = 0; c < d; ++c) {
      VectorField row = spectral::zero_vector(g);
      for (int j = 0; j < d; ++j) {
        PhysicalField t(g);
        for (std::size_t i = 0; i < np; ++i) {
          const double av = a.values[i];
          t.values[i] = params.mu_tilde(av) * (du[c][j].values[i] + du[j][c].values[i]);
          if (c == j) t.values[i] += params.lambda_tilde(av) * divu.values[i];
        }
        row[j] = truncated(t);
      }
      visc[c] = spectral::divergence(row);
    }
  }

  out.g = spectral::zero_vector(g);
  for (int c = 0; c < d; ++c) {
    const PhysicalField lc = spectral::to_physical(lame[c]);
    const PhysicalField gac = spectral::to_physical(grad_a[c]);
    PhysicalField vc;
    if (variable) vc = spectral::to_physical(visc[c]);
    PhysicalField gc(g);
    for (std::size_t i = 0; i < np; ++i) {
      const double av = a.values[i];
      double adv = 0.0;
      for (int j = 0; j < d; ++j) adv += u[j].values[i] * du[c][j].values[i];
      double v = -adv - params.I(av) * lc.values[i] - params.k(av) * gac.values[i];
      if (variable) v += vc.values[i] / (1.0 + av);
      gc.values[i] = v;
    }
    out.g[c] = truncated(gc);
  }
  return out;
}

}  // namespace nsp::solver
