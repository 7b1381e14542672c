#pragma once

#include <functional>
#include <optional>

#include "nsp/spectral/field.hpp"

namespace nsp::spectral {

/// Frequency seen by a multiplier symbol.
struct Wavevector {
  std::array<double, 3> k{};
  double norm = 0.0;
  bool nyquist = false;
};

using Symbol = std::function<Complex(const Wavevector&)>;

/// Multiplies every coefficient by symbol(xi). The value at xi = 0 is
/// `at_zero` when given, otherwise symbol(0) when finite, otherwise 0 for a
/// mean-zero field. A non-finite symbol at 0 on a field with a mean throws
/// DomainError.
SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol,
                               std::optional<Complex> at_zero = std::nullopt);

/// Radial multiplier m(|xi|); same zero-mode rules as apply_multiplier.
SpectralField apply_radial(const SpectralField& f, const std::function<double(double)>& m,
                           std::optional<double> at_zero = std::nullopt);

// Spectral differential operators. Odd-order operators drop Nyquist modes.
SpectralField partial(const SpectralField& f, int axis);
VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& u);
/// 2-D: one scalar component (d1 u2 - d2 u1); 3-D: the usual three.
VectorField curl(const VectorField& u);
SpectralField laplacian(const SpectralField& f);
/// Lambda^s = |D|^s. Negative s requires a mean-zero field; the zero mode of
/// the result is 0 whenever s != 0.
SpectralField lambda_power(const SpectralField& f, double s);
/// (-Delta)^{-1} with zero mean output; requires a mean-zero field.
SpectralField inv_neg_laplacian(const SpectralField& f);
/// Leray projector onto divergence-free fields, P = Id - grad (-Delta)^{-1} div.
VectorField leray_P(const VectorField& u);
/// Complementary projector onto gradients, Q = Id - P.
VectorField leray_Q(const VectorField& u);

/// Zeroes every mode outside the 2/3-rule box (and all Nyquist modes).
void dealias(SpectralField& f);
void dealias(VectorField& u);

}  // namespace nsp::spectral
