#pragma once

#include "nsp/spectral/field.hpp"

namespace nsp::spectral {

/// Forward transform; coefficients are normalized so that the inverse is an
/// unscaled sum over modes.
SpectralField to_spectral(const PhysicalField& f);
PhysicalField to_physical(const SpectralField& f);

/// inverse(forward(samples)), exposed for testing the transform pair.
SpectralField transform_roundtrip(const SpectralField& f);

}  // namespace nsp::spectral
