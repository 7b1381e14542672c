#pragma once

#include <cstdint>

#include "nsp/spectral/field.hpp"

namespace nsp::spectral {

/// Spectral support of a random field: a ball |xi| <= radius, or the
/// dyadic annulus 3/4 2^j <= |xi| <= 8/3 2^j.
struct Support {
  enum class Kind { ball, annulus };
  Kind kind = Kind::ball;
  double radius = 0.0;
  int j = 0;

  static Support ball(double radius) { return {Kind::ball, radius, 0}; }
  static Support annulus(int j) { return {Kind::annulus, 0.0, j}; }

  double inner() const;
  double outer() const;
  bool contains(double r) const;
};

enum class SpectrumLaw {
  iid,               // i.i.d. standard complex Gaussian per mode
  flat_per_annulus,  // same, rescaled so each dyadic shell carries equal energy
};

/// Real, mean-zero random field with complex Gaussian coefficients on the
/// support. Coefficients are drawn in a fixed order over integer wavevectors
/// so that a seed defines the same function on every grid resolving it.
/// Throws DomainError when no lattice mode lies in the support.
SpectralField random_field(const Grid& g, const Support& support, std::uint64_t seed,
                           SpectrumLaw law = SpectrumLaw::iid);

/// splitmix64 step, used to derive per-trial seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace nsp::spectral
