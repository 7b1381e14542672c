#include "nsp/linear/semigroup.hpp"

#include <cmath>
#include <vector>

#include "nsp/error.hpp"
#include "nsp/linear/mode.hpp"

namespace nsp::linear {
namespace {

std::vector<double> radii(const SemigroupScanOptions& opt) {
  std::vector<double> r;
  // A few tiny radii probe the rotation limit.
  for (double f : {1e-4, 1e-3, 1e-2}) r.push_back(f * opt.r_max);
  for (int i = 1; i <= opt.r_samples; ++i) r.push_back(opt.r_max * i / opt.r_samples);
  return r;
}

}  // namespace

double semigroup_constant(double c0, const SemigroupScanOptions& opt) {
  if (!(opt.r_max > 0.0) || !(opt.t_max >= 0.0) || opt.r_samples < 1 || opt.t_samples < 1)
    throw DomainError("invalid semigroup scan options");
  double worst = 0.0;
  for (double r : radii(opt)) {
    for (int k = 0; k <= opt.t_samples; ++k) {
      const double t = opt.t_max * k / opt.t_samples;
      const double v = mode_exponential(r, t, opt.poisson).op_norm() * std::exp(c0 * r * r * t);
      worst = std::max(worst, v);
    }
  }
  return worst;
}

SemigroupBound verify_semigroup_bound(double c0, double C_limit, const SemigroupScanOptions& opt) {
  SemigroupBound out;
  out.c0 = c0;
  out.C_limit = C_limit;
  out.C = semigroup_constant(c0, opt);
  out.pass = out.C <= C_limit;
  double lo = 0.0, hi = 1.0;
  if (semigroup_constant(hi, opt) <= C_limit) {
    lo = hi;
  } else if (semigroup_constant(lo, opt) <= C_limit) {
    for (int it = 0; it < 30; ++it) {
      const double mid = 0.5 * (lo + hi);
      (semigroup_constant(mid, opt) <= C_limit ? lo : hi) = mid;
    }
  }
  out.best_c0 = lo;
  return out;
}

}  // namespace nsp::linear
