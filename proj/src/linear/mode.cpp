#include "nsp/linear/mode.hpp"

#include <cmath>

#include "nsp/error.hpp"

namespace nsp::linear {

double Mat2::op_norm() const {
  const double s = a * a + b * b + c * c + d * d;
  const double dt = det();
  const double disc = std::max(0.0, s * s - 4.0 * dt * dt);
  return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2 operator*(double s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

Mat2 mode_matrix(double r, bool poisson) {
  if (!(r > 0.0)) throw DomainError("mode radius must be positive");
  const double r2 = r * r;
  return {0.0, -1.0, poisson ? r2 + 1.0 : r2, -r2};
}

double relative_discriminant(double r, bool poisson) {
  const Mat2 m = mode_matrix(r, poisson);
  const double tr = m.trace(), det = m.det();
  return std::abs(tr * tr - 4.0 * det) / (tr * tr + 4.0 * std::abs(det));
}

double collision_radius() { return std::sqrt(2.0 + 2.0 * std::sqrt(2.0)); }

namespace {

// cosh(sqrt z) and sinh(sqrt z)/sqrt z by their Taylor series (|z| <= 1).
void even_odd_series(double z, double& ch, double& sh) {
  ch = 1.0;
  sh = 1.0;
  double term_c = 1.0, term_s = 1.0;
  for (int k = 1; k < 30; ++k) {
    term_c *= z / ((2.0 * k - 1.0) * (2.0 * k));
    term_s *= z / ((2.0 * k) * (2.0 * k + 1.0));
    ch += term_c;
    sh += term_s;
    if (std::abs(term_c) < 1e-18 && std::abs(term_s) < 1e-18) break;
  }
}

}  // namespace

Mat2 mode_exponential(double r, double t, bool poisson) {
  if (!(t >= 0.0)) throw DomainError("propagation time must be nonnegative");
  const Mat2 m = mode_matrix(r, poisson);
  if (t == 0.0) return Mat2::identity();

  // exp(tM) = exp(mid t) [C I + S (M - mid I)] with mid = tr/2 and
  // q^2 = mid^2 - det; C = cosh(q t), S = sinh(q t)/q.
  const double mid = 0.5 * m.trace();
  const double q2 = mid * mid - m.det();
  const Mat2 shifted = m - mid * Mat2::identity();
  const double z = q2 * t * t;

  if (relative_discriminant(r, poisson) < kCollisionThreshold && std::abs(z) <= 1.0) {
    double ch = 0.0, sh = 0.0;
    even_odd_series(z, ch, sh);
    const double e = std::exp(mid * t);
    return (e * ch) * Mat2::identity() + (e * t * sh) * shifted;
  }

  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    const double lo = std::exp((mid - q) * t);
    const double hi = std::exp((mid + q) * t);
    const double c = 0.5 * (hi + lo);
    const double s = -hi * std::expm1(-2.0 * q * t) / (2.0 * q);
    return c * Mat2::identity() + s * shifted;
  }
  const double q = std::sqrt(-q2);
  const double e = std::exp(mid * t);
  return (e * std::cos(q * t)) * Mat2::identity() + (e * std::sin(q * t) / q) * shifted;
}

}  // namespace nsp::linear
