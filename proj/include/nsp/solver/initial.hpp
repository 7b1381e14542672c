#pragma once

#include <cstdint>

#include "nsp/fluid_state.hpp"

namespace nsp::solver {

/// Random smooth data: a and each u component are random fields on the ball
/// |xi| <= support_radius, scaled so that max |a| = max |u| = amplitude.
/// Per-field seeds are derived from `seed`.
FluidState random_initial_state(const spectral::Grid& g, double amplitude, double support_radius,
                                std::uint64_t seed);

}  // namespace nsp::solver
