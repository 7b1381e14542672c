#include "nsp/decay/rates.hpp"

#include <charconv>
#include <cmath>

#include "nsp/error.hpp"

namespace nsp::decay {

namespace {

std::string fmt(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void require_p2(const DecayParams& params) {
  if (params.p != 2.0) throw DomainError("L^r decay exponents need p = 2");
}

}  // namespace

SlopeFit fit_decay_slope(std::span<const double> times, std::span<const double> values, double t_a,
                         double t_b) {
  if (times.size() != values.size()) throw StructuralError("time and value counts differ");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_a || times[i] > t_b) continue;
    if (!(values[i] > 0.0)) throw DomainError("slope fit needs positive values in the window");
    x.push_back(std::log(japanese(times[i])));
    y.push_back(std::log(values[i]));
  }
  const std::size_t n = x.size();
  if (n < 10) throw DomainError("slope fit needs at least 10 samples in the window");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("slope fit needs distinct times");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.samples = n;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - my - fit.slope * (x[i] - mx);
    rss += e * e;
  }
  fit.std_error = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  return fit;
}

SlopeFit fit_decay_slope(const NormSeries& series, const std::string& name, double t_a, double t_b) {
  const auto [t, v] = series.series(name);
  return fit_decay_slope(t, v, t_a, t_b);
}

double density_exponent(const DecayParams& params, double s) {
  const double d = params.d, p = params.p, s1 = params.s1;
  if (!(s > -s1 - 1.0 && s <= d / p + 1e-12)) throw DomainError("-s1 - 1 < s <= d/p is required");
  return -(s1 + s + 1.0) / 2.0;
}

double velocity_exponent(const DecayParams& params, double s) {
  const double d = params.d, p = params.p, s1 = params.s1;
  if (!(s > -s1 && s <= d / p + 1.0 + 1e-12)) throw DomainError("-s1 < s <= d/p + 1 is required");
  return -(s1 + s) / 2.0;
}

double density_exponent_lr(const DecayParams& params, double r, double l) {
  require_p2(params);
  if (!(r >= 2.0)) throw DomainError("2 <= r <= inf is required");
  const double d = params.d, s1 = params.s1, shift = 0.5 * d * (0.5 - 1.0 / r);
  if (!(l + 2.0 * shift > -s1 - 1.0 && l + 2.0 * shift <= 0.5 * d + 1e-12))
    throw DomainError("-s1 - 1 < l + d(1/2 - 1/r) <= d/2 is required");
  return -s1 / 2.0 - shift - (l + 1.0) / 2.0;
}

double velocity_exponent_lr(const DecayParams& params, double r, double k) {
  require_p2(params);
  if (!(r >= 2.0)) throw DomainError("2 <= r <= inf is required");
  const double d = params.d, s1 = params.s1, shift = 0.5 * d * (0.5 - 1.0 / r);
  if (!(k + 2.0 * shift > -s1 && k + 2.0 * shift <= 0.5 * d + 1.0 + 1e-12))
    throw DomainError("-s1 < k + d(1/2 - 1/r) <= d/2 + 1 is required");
  return -s1 / 2.0 - shift - k / 2.0;
}

double slope_gap(bool poisson) { return poisson ? -0.5 : 0.0; }

bool RateReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return !rows.empty();
}

std::string RateReport::to_csv() const {
  std::string out = "quantity,predicted,fitted,stderr,tolerance,pass\n";
  for (const auto& r : rows)
    out += r.quantity + "," + fmt(r.predicted) + "," + fmt(r.fitted) + "," + fmt(r.std_error) + "," +
           fmt(r.tolerance) + "," + (r.pass ? "true" : "false") + "\n";
  return out;
}

RateReport rate_report(const DecayParams& params, double s, bool poisson, const SlopeFit& density,
                       const SlopeFit& velocity, double tolerance) {
  const double vel = velocity_exponent(params, s);
  const double gap = slope_gap(poisson);
  // Without the Poisson term the density follows the velocity rate.
  const double den = poisson ? density_exponent(params, s) : vel + gap;
  auto row = [&](std::string q, double pred, double fit, double se) {
    return RateRow{std::move(q), pred, fit, se, tolerance, std::abs(fit - pred) <= tolerance};
  };
  RateReport rep;
  rep.rows.push_back(row("density", den, density.slope, density.std_error));
  rep.rows.push_back(row("velocity", vel, velocity.slope, velocity.std_error));
  rep.rows.push_back(row("gap", gap, density.slope - velocity.slope,
                         std::hypot(density.std_error, velocity.std_error)));
  return rep;
}

}  // namespace nsp::decay
