#pragma once

#include <filesystem>

#include "nsp/fluid_state.hpp"
#include "nsp/solver/params.hpp"

namespace nsp::solver {

/// Binary layout, little-endian:
///   char[4] "NSPC", u32 version, u32 dim, u32 n, f64 length, f64 t,
///   f64 mu_inf, f64 lambda_inf, f64 gamma, u32 viscosity, f64 beta, u32 poisson,
///   then the coefficient planes of a, u_1, ..., u_d as (re, im) f64 pairs in
///   half-spectrum order.
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(const std::filesystem::path& path, const FluidState& state,
                      const PhysicalParams& params);

struct Checkpoint {
  FluidState state;
  PhysicalParams params;
};

Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace nsp::solver
