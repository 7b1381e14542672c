#include "nsp/solver/params.hpp"

#include <cmath>

#include "nsp/error.hpp"

namespace nsp::solver {

void PhysicalParams::validate() const {
  if (!(mu_inf > 0.0)) throw ConfigError("mu_inf > 0 is required");
  if (!(std::abs(2.0 * mu_inf + lambda_inf - 1.0) <= 1e-12))
    throw ConfigError("2 mu_inf + lambda_inf = 1 is required");
  if (!(gamma > 1.0)) throw ConfigError("gamma > 1 is required");
  if (!std::isfinite(beta)) throw ConfigError("viscosity exponent must be finite");
}

double PhysicalParams::k(double a) const { return std::pow(1.0 + a, gamma - 2.0) - 1.0; }

double PhysicalParams::mu_tilde(double a) const {
  if (viscosity == ViscosityModel::constant) return 0.0;
  return mu_inf * (std::pow(1.0 + a, beta) - 1.0);
}

double PhysicalParams::lambda_tilde(double a) const {
  if (viscosity == ViscosityModel::constant) return 0.0;
  return lambda_inf * (std::pow(1.0 + a, beta) - 1.0);
}

}  // namespace nsp::solver
