#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nsp/fluid_state.hpp"
#include "nsp/linear/mode.hpp"
#include "nsp/norm_series.hpp"
#include "nsp/solver/nonlinear.hpp"

namespace nsp::solver {

/// dt <= 0.5 dx / max(1, max |u|).
double cfl_limit(const FluidState& state);

/// Exponential time differencing of order two (Cox-Matthews) for a fixed dt:
/// the linear part is propagated exactly per mode and the nonlinear forcing
/// enters through phi_1 and phi_2 of the same linear operator.
class Stepper {
 public:
  Stepper(const spectral::Grid& g, double dt, const PhysicalParams& params, bool linear_only = false);

  /// One step in place. Throws StepSizeError when dt exceeds cfl_limit and
  /// VacuumError when the result has 1 + a <= 0.
  void step(FluidState& state) const;

  double dt() const { return dt_; }
  const PhysicalParams& params() const { return params_; }
  bool linear_only() const { return linear_only_; }

 private:
  struct ModeCoeffs {
    linear::Mat2 e, p1, p2;  // exp(hM), phi_1(hM), phi_2(hM)
    double he = 1.0, hp1 = 1.0, hp2 = 0.5;
  };

  void combine(const FluidState& x, const Nonlinearities& n, bool first, FluidState& out) const;

  spectral::Grid grid_;
  double dt_;
  PhysicalParams params_;
  bool linear_only_;
  std::vector<ModeCoeffs> coeffs_;
};

/// Records norms of the current state into `out` at time state.t.
using Recorder = std::function<void(const FluidState&, NormSeries& out)>;

/// Solution-space norms with cutoff j0 and exponent p:
///   X_low  = ||(Lambda^-1 a, u)||^l in B^{d/2-1}_{2,1},
///   X_high = ||a||^h in B^{d/p}_{p,1} + ||u||^h in B^{d/p-1}_{p,1},
///   energy = (||Lambda^-1 a||^2 + ||a||^2 + ||u||^2)^{1/2},
///   a_B    = ||a|| in B^{d/p}_{p,1}.
Recorder solution_norm_recorder(int j0, double p);

/// solution_norm_recorder(0, 2).
void default_recorder(const FluidState& state, NormSeries& out);

struct SimulationOptions {
  double horizon = 1.0;
  double cadence = 0.1;
  double dt = 0.05;  // upper bound; rounded down so cadence is a whole number of steps
  bool linear_only = false;
  double smallness_threshold = 0.05;
  double smallness_p = 2.0;
  double divergence_factor = 10.0;
  Recorder recorder = default_recorder;
  std::function<void(const FluidState&)> on_output;
};

struct SimulationResult {
  NormSeries series;
  FluidState final_state;
  double smallness = 0.0;  // B^{d/p}_{p,1} norm of a(0)
  bool small = true;       // smallness <= threshold
  bool torus_horizon_ok = true;  // T <= (L / 2 pi)^2 / 10
  long steps = 0;
  double dt = 0.0;
};

/// Integrates to the horizon, recording at t = 0 and every cadence. Throws
/// DivergenceError when a tracked norm with positive initial value exceeds
/// divergence_factor times that value.
SimulationResult simulate(const FluidState& init, const PhysicalParams& params,
                          const SimulationOptions& opt);

}  // namespace nsp::solver
