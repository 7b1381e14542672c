#pragma once

#include <span>
#include <string>
#include <vector>

#include "nsp/decay/params.hpp"
#include "nsp/norm_series.hpp"

namespace nsp::decay {

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of log(value) against log <t> over t in [t_a, t_b].
/// Needs at least 10 samples in the window; nonpositive values there throw
/// DomainError.
SlopeFit fit_decay_slope(std::span<const double> times, std::span<const double> values, double t_a,
                         double t_b);
SlopeFit fit_decay_slope(const NormSeries& series, const std::string& name, double t_a, double t_b);

/// Predicted exponents (negative numbers are decay).
/// ||Lambda^s a||_{L^p} ~ <t>^{-(s1+s+1)/2} for -s1-1 < s <= d/p.
double density_exponent(const DecayParams& params, double s);
/// ||Lambda^s u||_{L^p} ~ <t>^{-(s1+s)/2} for -s1 < s <= d/p + 1.
double velocity_exponent(const DecayParams& params, double s);
/// p = 2: ||Lambda^l a||_{L^r} ~ <t>^{-s1/2 - d/2 (1/2 - 1/r) - (l+1)/2}.
double density_exponent_lr(const DecayParams& params, double r, double l);
/// p = 2: ||Lambda^k u||_{L^r} ~ <t>^{-s1/2 - d/2 (1/2 - 1/r) - k/2}.
double velocity_exponent_lr(const DecayParams& params, double r, double k);
/// Density-minus-velocity slope gap: -1/2 with the Poisson coupling, 0 without.
double slope_gap(bool poisson);

struct RateRow {
  std::string quantity;
  double predicted = 0.0;
  double fitted = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RateReport {
  std::vector<RateRow> rows;
  bool all_pass() const;
  std::string to_csv() const;
};

/// Rows for the density and velocity slopes at regularity s and their gap.
/// Without the Poisson coupling the density target equals the velocity target.
RateReport rate_report(const DecayParams& params, double s, bool poisson, const SlopeFit& density,
                       const SlopeFit& velocity, double tolerance);

}  // namespace nsp::decay
