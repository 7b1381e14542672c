#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "nsp/error.hpp"
#include "nsp/ineq/checks.hpp"

namespace nsp::ineq {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

void validate(const ConvolutionParams& p) {
  if (!(p.sigma1 >= 0.0 && p.sigma1 <= p.sigma2)) throw RejectedCase("0 <= sigma1 <= sigma2 is required");
  if (!(p.sigma2 > 1.0)) throw RejectedCase("sigma2 > 1 is required");
  if (!(p.theta >= 0.0 && p.theta < 1.0)) throw RejectedCase("0 <= theta < 1 is required");
}

}  // namespace

double convolution_integral(const ConvolutionParams& p, double t) {
  validate(p);
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  if (t == 0.0) return 0.0;
  auto f = [&](double tau) {
    return std::pow(bracket(t - tau), -p.sigma1) * std::pow(tau, -p.theta) * std::pow(bracket(tau), p.theta - p.sigma2);
  };
  boost::math::quadrature::tanh_sinh<double> q;
  // Break points at the tau = 0 singularity scale and the tau = t bump.
  std::vector<double> cuts{0.0};
  for (double x : {1.0, 0.5 * t, t - 1.0})
    if (x > cuts.back() && x < t) cuts.push_back(x);
  cuts.push_back(t);
  double acc = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) acc += q.integrate(f, cuts[i - 1], cuts[i], 1e-12);
  return acc;
}

RatioReport check_time_convolution(const ConvolutionParams& p) {
  validate(p);
  if (p.times.empty()) throw ConfigError("at least one time is required");
  RatioReport rep("time_convolution");
  for (double t : p.times) {
    if (!(t > 0.0)) throw ConfigError("times must be positive");
    rep.add(0, 0, "convolution", convolution_integral(p, t), std::pow(bracket(t), -p.sigma1));
  }
  rep.set_extra("sup_ratio", rep.max_ratio());
  return rep;
}

}  // namespace nsp::ineq
