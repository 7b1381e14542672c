#include "nsp/linear/radial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nsp/error.hpp"
#include "nsp/linear/mode.hpp"

namespace nsp::linear {
namespace {

using Cx = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

constexpr double kTailFraction = 1e-14;
constexpr unsigned kMaxDepth = 12;

struct Amplitudes {
  double a2 = 0.0;  // |a(t,r)|^2
  double u2 = 0.0;  // |u(t,r)|^2
};

Amplitudes evolve(const RadialProfile& p, const LinearParams& lp, double r, double t) {
  const Cx a0 = p.a0 ? p.a0(r) : Cx{};
  const Cx w0 = p.omega0 ? p.omega0(r) : Cx{};
  const Cx s0 = p.solenoidal0 ? p.solenoidal0(r) : Cx{};
  if (r == 0.0) return {std::norm(a0), std::norm(w0) + std::norm(s0)};
  const Mat2 e = mode_exponential(r, t, lp.poisson);
  // Density enters the pair as a / r; the output density is r * a~.
  const Cx a = e.a * a0 + r * e.b * w0;
  const Cx w = e.c * (a0 / r) + e.d * w0;
  const Cx s = std::exp(-lp.mu_inf * r * r * t) * s0;
  return {std::norm(a), std::norm(w) + std::norm(s)};
}

double adaptive(const std::function<double(double)>& g, double a, double b, double abs_tol,
                unsigned depth) {
  double err = 0.0;
  const double v = gauss_kronrod<double, 15>::integrate(g, a, b, 0, 0.0, &err);
  if (err <= abs_tol || depth == 0) return v;
  const double m = 0.5 * (a + b);
  return adaptive(g, a, m, 0.5 * abs_tol, depth - 1) + adaptive(g, m, b, 0.5 * abs_tol, depth - 1);
}

// Panels are refined until each meets its share of rel_tol times a coarse total.
double integrate(const std::function<double(double)>& g, const std::vector<double>& edges,
                 double rel_tol) {
  double coarse = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double err = 0.0;
    coarse += std::abs(gauss_kronrod<double, 15>::integrate(g, edges[i], edges[i + 1], 0, 0.0, &err));
  }
  if (coarse == 0.0) return 0.0;
  const double share = rel_tol * coarse / static_cast<double>(edges.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i + 1] > edges[i]) total += adaptive(g, edges[i], edges[i + 1], share, kMaxDepth);
  return total;
}

std::vector<double> panel_edges(double r_cut, double t, const std::vector<double>& extra) {
  std::vector<double> e{0.0, r_cut};
  const double scale = 1.0 / std::sqrt(1.0 + t);
  for (double m = 1.0; m * scale < r_cut; m *= 2.0) e.push_back(m * scale);
  for (double m = 0.5; m >= 1.0 / 256.0 && m * scale < r_cut; m *= 0.5) e.push_back(m * scale);
  for (double x : extra)
    if (x > 0.0 && x < r_cut) e.push_back(x);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

void check_integrable_at_zero(const std::function<double(double)>& g) {
  // r g(r) must vanish at the origin.
  const double near = 1e-12 * g(1e-12);
  const double far = 1e-6 * g(1e-6);
  if (!std::isfinite(near) || (near > 0.0 && near >= 0.5 * far))
    throw DomainError("radial integrand is not integrable at r = 0");
}

std::string series_name(const char* base, double s) {
  if (s == 0.0) return base;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, s);
  return std::string(base) + ":s=" + std::string(buf, res.ptr);
}

}  // namespace

double sphere_area(int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

RadialProfile RadialProfile::indicator_velocity(int dim, double radius) {
  if (!(radius > 0.0)) throw DomainError("indicator radius must be positive");
  RadialProfile p;
  p.dim = dim;
  p.a0 = [](double) { return Cx{}; };
  p.omega0 = [radius](double r) { return r <= radius ? Cx{1.0} : Cx{}; };
  p.solenoidal0 = [](double) { return Cx{}; };
  p.support = radius;
  return p;
}

RadialResult radial_decay_quadrature(const RadialProfile& profile, std::span<const double> times,
                                     const RadialOptions& opt) {
  if (profile.dim != 2 && profile.dim != 3) throw DomainError("radial quadrature needs d in {2, 3}");
  if (!(opt.rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const int d = profile.dim;
  const double weight = sphere_area(d) / std::pow(2.0 * std::numbers::pi, d);
  const double power = d - 1 + 2.0 * opt.s;
  const auto jac = [power](double r) { return r == 0.0 ? (power == 0.0 ? 1.0 : 0.0) : std::pow(r, power); };

  const auto g0 = [&](double r) {
    const auto amp = evolve(profile, opt.params, r, 0.0);
    return (amp.a2 + amp.u2) * jac(r);
  };
  check_integrable_at_zero(g0);

  RadialResult out;
  std::vector<double> extra;
  if (profile.support) {
    if (!(*profile.support > 0.0)) throw DomainError("support radius must be positive");
    out.r_cut = *profile.support;
    out.tail_bound = 0.0;
    extra.push_back(*profile.support);
  } else {
    double r_cut = 1.0;
    double total = integrate(g0, panel_edges(r_cut, 0.0, {}), opt.rel_tol);
    for (int it = 0; it < 60; ++it) {
      const double tail = integrate(g0, {r_cut, 2.0 * r_cut}, opt.rel_tol);
      total += tail;
      r_cut *= 2.0;
      if (tail <= kTailFraction * total) {
        out.tail_bound = total > 0.0 ? tail / total : 0.0;
        break;
      }
      if (it == 59) throw DomainError("radial profile tail does not decay");
    }
    out.r_cut = r_cut;
  }

  const std::string na = series_name("a", opt.s);
  const std::string nu = series_name("u", opt.s);
  for (double t : times) {
    if (!(t >= 0.0)) throw DomainError("times must be nonnegative");
    const auto edges = panel_edges(out.r_cut, t, extra);
    const double ia = integrate(
        [&](double r) { return evolve(profile, opt.params, r, t).a2 * jac(r); }, edges, opt.rel_tol);
    const double iu = integrate(
        [&](double r) { return evolve(profile, opt.params, r, t).u2 * jac(r); }, edges, opt.rel_tol);
    out.series.add(t, na, std::sqrt(std::max(0.0, weight * ia)));
    out.series.add(t, nu, std::sqrt(std::max(0.0, weight * iu)));
  }
  return out;
}

}  // namespace nsp::linear
