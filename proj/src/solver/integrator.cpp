#include "nsp/solver/integrator.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "nsp/error.hpp"
#include "nsp/lp/besov.hpp"
#include "nsp/spectral/norms.hpp"
#include "nsp/spectral/operators.hpp"

namespace nsp::solver {

using linear::Mat2;
using spectral::Complex;

namespace {

void scalar_phi(double z, double& p1, double& p2) {
  if (std::abs(z) < 1e-2) {
    // Taylor series: phi_k(z) = sum z^m / (m + k)!.
    p1 = 0.0;
    p2 = 0.0;
    double term = 1.0;  // z^m / m!
    for (int m = 0; m < 12; ++m) {
      p1 += term / (m + 1);
      p2 += term / ((m + 1) * (m + 2));
      term *= z / (m + 1);
    }
    return;
  }
  const double em1 = std::expm1(z);
  p1 = em1 / z;
  p2 = (em1 - z) / (z * z);
}

Mat2 block(const Eigen::Matrix<double, 6, 6>& m, int col) {
  return {m(0, col), m(0, col + 1), m(1, col), m(1, col + 1)};
}

std::array<Complex, 2> apply(const Mat2& m, Complex x, Complex y) {
  return {m.a * x + m.b * y, m.c * x + m.d * y};
}

}  // namespace

double cfl_limit(const FluidState& state) {
  const double umax = spectral::lp_norm(state.u, spectral::kInf);
  return 0.5 * state.grid().dx() / std::max(1.0, umax);
}

Stepper::Stepper(const spectral::Grid& g, double dt, const PhysicalParams& params, bool linear_only)
    : grid_(g), dt_(dt), params_(params), linear_only_(linear_only) {
  params_.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
  const auto& lat = spectral::lattice(g);
  coeffs_.resize(lat.size());
  std::map<long long, ModeCoeffs> cache;
  const double k0 = g.k0();
  for (std::size_t i = 1; i < lat.size(); ++i) {
    if (lat.nyquist[i]) continue;
    const double r = lat.radius[i];
    const long long key = std::llround((r / k0) * (r / k0));
    auto it = cache.find(key);
    if (it == cache.end()) {
      ModeCoeffs c;
      const Mat2 m = linear::mode_matrix(r, params.poisson);
      c.e = linear::mode_exponential(r, dt, params.poisson);
      Eigen::Matrix<double, 6, 6> aug = Eigen::Matrix<double, 6, 6>::Zero();
      aug(0, 0) = dt * m.a;
      aug(0, 1) = dt * m.b;
      aug(1, 0) = dt * m.c;
      aug(1, 1) = dt * m.d;
      aug.block<2, 2>(0, 2).setIdentity();
      aug.block<2, 2>(2, 4).setIdentity();
      const Eigen::Matrix<double, 6, 6> ex = aug.exp();
      c.p1 = block(ex, 2);
      c.p2 = block(ex, 4);
      const double z = -params.mu_inf * r * r * dt;
      c.he = std::exp(z);
      scalar_phi(z, c.hp1, c.hp2);
      it = cache.emplace(key, c).first;
    }
    coeffs_[i] = it->second;
  }
}

// first: out = exp(hL) x + h phi_1(hL) n;  otherwise: out = x + h phi_2(hL) n.
void Stepper::combine(const FluidState& x, const Nonlinearities& n, bool first, FluidState& out) const {
  const auto& lat = spectral::lattice(grid_);
  const int d = grid_.dim;
  const double h = dt_;
  constexpr Complex I{0.0, 1.0};
  out.a[0] = x.a[0] + h * (first ? 1.0 : 0.5) * n.f[0];
  for (int c = 0; c < d; ++c) out.u[c][0] = x.u[c][0] + h * (first ? 1.0 : 0.5) * n.g[c][0];
  for (std::size_t i = 1; i < lat.size(); ++i) {
    if (lat.nyquist[i]) {
      out.a[i] = 0.0;
      for (int c = 0; c < d; ++c) out.u[c][i] = 0.0;
      continue;
    }
    const auto& k = lat.k[i];
    const double r = lat.radius[i];
    const ModeCoeffs& mc = coeffs_[i];
    Complex ku = 0.0, kg = 0.0;
    for (int c = 0; c < d; ++c) {
      ku += k[c] * x.u[c][i];
      kg += k[c] * n.g[c][i];
    }
    const Complex at = x.a[i] / r, om = I * ku / r;
    const Complex nat = n.f[i] / r, nom = I * kg / r;
    std::array<Complex, 2> pair;
    double sx, sn;
    if (first) {
      const auto lin = apply(mc.e, at, om);
      const auto frc = apply(mc.p1, nat, nom);
      pair = {lin[0] + h * frc[0], lin[1] + h * frc[1]};
      sx = mc.he;
      sn = h * mc.hp1;
    } else {
      const auto frc = apply(mc.p2, nat, nom);
      pair = {at + h * frc[0], om + h * frc[1]};
      sx = 1.0;
      sn = h * mc.hp2;
    }
    out.a[i] = r * pair[0];
    for (int c = 0; c < d; ++c) {
      const Complex su = x.u[c][i] - k[c] * ku / (r * r);
      const Complex sg = n.g[c][i] - k[c] * kg / (r * r);
      out.u[c][i] = sx * su + sn * sg - I * (k[c] / r) * pair[1];
    }
  }
}

void Stepper::step(FluidState& state) const {
  spectral::require_same_grid(grid_, state.grid(), "time step");
  const double limit = cfl_limit(state);
  if (dt_ > limit)
    throw StepSizeError("time step " + std::to_string(dt_) + " exceeds the CFL limit " + std::to_string(limit));
  FluidState stage(grid_);
  FluidState next(grid_);
  if (linear_only_) {
    Nonlinearities zero{spectral::SpectralField(grid_), spectral::zero_vector(grid_)};
    combine(state, zero, true, next);
  } else {
    const Nonlinearities n0 = compute_nonlinearities(state, params_);
    combine(state, n0, true, stage);
    Nonlinearities n1 = compute_nonlinearities(stage, params_);
    n1.f -= n0.f;
    for (std::size_t c = 0; c < n1.g.size(); ++c) n1.g[c] -= n0.g[c];
    combine(stage, n1, false, next);
    check_vacuum(next.a);
  }
  next.t = state.t + dt_;
  state = std::move(next);
}

Recorder solution_norm_recorder(int j0, double p) {
  spectral::validate_exponent(p, "p");
  return [j0, p](const FluidState& state, NormSeries& out) {
    const int d = state.grid().dim;
    lp::BesovSpec spec;
    spec.r = 1.0;
    spec.s = 0.5 * d - 1.0;
    spec.p = 2.0;
    // Homogeneous norms never see xi = 0; the mean of u is not conserved.
    spectral::VectorField u = state.u;
    for (auto& c : u) c.remove_mean();
    spectral::VectorField pair{spectral::lambda_power(state.a, -1.0)};
    pair.insert(pair.end(), u.begin(), u.end());
    out.add(state.t, "X_low", lp::besov_norm(pair, lp::low(spec, j0)));
    spec.p = p;
    spec.s = d / p;
    const double ah = lp::besov_norm(state.a, lp::high(spec, j0));
    const double a_all = lp::besov_norm(state.a, spec);
    spec.s = d / p - 1.0;
    const double uh = lp::besov_norm(u, lp::high(spec, j0));
    out.add(state.t, "X_high", ah + uh);
    const double e2 = std::pow(spectral::spectral_l2_norm(state.u), 2) +
                      std::pow(spectral::spectral_l2_norm(pair[0]), 2) +
                      std::pow(spectral::spectral_l2_norm(state.a), 2);
    out.add(state.t, "energy", std::sqrt(e2));
    out.add(state.t, "a_B", a_all);
  };
}

void default_recorder(const FluidState& state, NormSeries& out) {
  static const Recorder rec = solution_norm_recorder(0, 2.0);
  rec(state, out);
}

SimulationResult simulate(const FluidState& init, const PhysicalParams& params,
                          const SimulationOptions& opt) {
  params.validate();
  if (!(opt.horizon >= 0.0) || !(opt.cadence > 0.0) || !(opt.dt > 0.0))
    throw DomainError("horizon, cadence and dt must be positive");
  if (!init.a.is_mean_zero()) throw DomainError("initial density perturbation must be mean-zero");
  check_vacuum(init.a);
  const long outputs = std::llround(opt.horizon / opt.cadence);
  if (std::abs(outputs * opt.cadence - opt.horizon) > 1e-9 * std::max(1.0, opt.horizon))
    throw DomainError("horizon must be a whole number of output intervals");
  const long sub = static_cast<long>(std::ceil(opt.cadence / opt.dt - 1e-9));
  const double h = opt.cadence / static_cast<double>(sub);

  const auto& g = init.grid();
  SimulationResult res;
  res.dt = h;
  lp::BesovSpec small;
  small.s = g.dim / opt.smallness_p;
  small.p = opt.smallness_p;
  small.r = 1.0;
  res.smallness = lp::besov_norm(init.a, small);
  res.small = res.smallness <= opt.smallness_threshold;
  res.torus_horizon_ok = opt.horizon <= std::pow(g.length / (2.0 * std::numbers::pi), 2) / 10.0;

  FluidState state = init;
  const double t0 = init.t;
  opt.recorder(state, res.series);
  std::map<std::string, double> initial;
  for (const auto& rec : res.series.records()) initial.emplace(rec.name, rec.value);
  if (opt.on_output) opt.on_output(state);

  const Stepper stepper(g, h, params, opt.linear_only);
  for (long k = 1; k <= outputs; ++k) {
    for (long s = 0; s < sub; ++s) {
      stepper.step(state);
      ++res.steps;
    }
    state.t = t0 + static_cast<double>(k) * opt.cadence;
    const std::size_t first = res.series.records().size();
    opt.recorder(state, res.series);
    const auto& recs = res.series.records();
    for (std::size_t i = first; i < recs.size(); ++i) {
      const auto it = initial.find(recs[i].name);
      if (it != initial.end() && it->second > 0.0 && recs[i].value > opt.divergence_factor * it->second)
        throw DivergenceError("divergence: " + recs[i].name + " = " + std::to_string(recs[i].value) +
                              " exceeds " + std::to_string(opt.divergence_factor) + " x initial at t = " +
                              std::to_string(recs[i].t));
    }
    if (opt.on_output) opt.on_output(state);
  }
  res.final_state = std::move(state);
  return res;
}

}  // namespace nsp::solver
