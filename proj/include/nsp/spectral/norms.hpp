#pragma once

#include <limits>

#include "nsp/spectral/field.hpp"

namespace nsp::spectral {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Rectangle-rule L^p norm of physical samples; p = infinity gives max |f|.
double lp_norm(const PhysicalField& f, double p);
double lp_norm(const SpectralField& f, double p);
/// L^p norm of the pointwise Euclidean magnitude of a vector field.
double lp_norm(const std::vector<PhysicalField>& u, double p);
double lp_norm(const VectorField& u, double p);

void validate_exponent(double p, const char* name);

}  // namespace nsp::spectral
