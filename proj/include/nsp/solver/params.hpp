#pragma once

namespace nsp::solver {

enum class ViscosityModel { constant, power_law };

/// Physical constants of the perturbation system around (1, 0).
/// Pressure P(rho) = rho^gamma / gamma, so P'(1) = 1. The power-law model uses
/// mu(rho) = mu_inf rho^beta and lambda(rho) = lambda_inf rho^beta.
struct PhysicalParams {
  double mu_inf = 0.25;
  double lambda_inf = 0.5;
  double gamma = 1.4;
  ViscosityModel viscosity = ViscosityModel::constant;
  double beta = 0.0;
  bool poisson = true;

  /// Throws ConfigError unless mu_inf > 0, 2 mu_inf + lambda_inf = 1, gamma > 1.
  void validate() const;

  double I(double a) const { return a / (1.0 + a); }
  double k(double a) const;
  double mu_tilde(double a) const;
  double lambda_tilde(double a) const;
};

}  // namespace nsp::solver
