#pragma once

#include <array>

namespace nsp::linear {

/// Real 2x2 matrix, row-major.
struct Mat2 {
  double a = 0.0, b = 0.0;
  double c = 0.0, d = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
  /// Largest singular value.
  double op_norm() const;
  std::array<double, 2> apply(double x, double y) const { return {a * x + b * y, c * x + d * y}; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(double s, const Mat2& x);

/// Generator of the (a-tilde, omega) pair at |xi| = r:
/// [[0, -1], [r^2 + 1, -r^2]] with the Poisson coupling, [[0, -1], [r^2, -r^2]]
/// without. Throws DomainError for r <= 0.
Mat2 mode_matrix(double r, bool poisson);

/// Relative discriminant |tr^2 - 4 det| / (tr^2 + 4 |det|) of mode_matrix(r).
double relative_discriminant(double r, bool poisson);

/// Below this relative discriminant the eigenvalues are treated as colliding.
inline constexpr double kCollisionThreshold = 1e-6;

/// exp(t M(r)) in closed form. Near the eigenvalue collision the Jordan-limit
/// formula exp(m t) (I + t (M - m I)) is used together with its series
/// correction in q^2 t^2, q being half the eigenvalue gap.
Mat2 mode_exponential(double r, double t, bool poisson);

/// Radius where the eigenvalues of the Poisson-coupled generator collide,
/// r^2 = 2 + 2 sqrt 2.
double collision_radius();

}  // namespace nsp::linear
