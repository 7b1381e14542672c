#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nsp/ineq/report.hpp"
#include "nsp/spectral/field.hpp"

namespace nsp::ineq {

using spectral::Grid;
using spectral::SpectralField;
using spectral::VectorField;

/// One randomized inequality scan. Fields are drawn per trial from
/// derive_seed(seed, trial) with flat per-annulus Gaussian spectra, so the
/// same trial is the same function on every grid in `grids`.
struct InequalityCase {
  std::string name = "case";
  std::string variant;  // selects the statement inside a check
  int dim = 2;
  double length = 6.283185307179586;
  std::vector<int> grids{64};
  int trials = 20;
  std::uint64_t seed = 1;

  double sigma = 0.5;
  double sigma1 = 0.5;
  double sigma2 = 0.5;
  double p = 2.0;
  double p1 = 2.0;
  double p2 = 2.0;
  double r = 1.0;
  double a = 2.0;  // Bernstein source exponent
  double b = 2.0;  // Bernstein target exponent
  int k = 1;       // derivative order or multiplier degree
  double lambda = 4.0;  // ball radius of the random fields
  int block = 0;        // annulus index for annulus-limited fields
  int j0 = 0;
  int n0_min = 1;
  int n0_max = 6;
  double amplitude = 0.1;
  double gamma = 1.4;
  double theta = 0.5;

  /// Grid list, trial count and dimension; throws ConfigError.
  void validate() const;
};

// Field helpers.
SpectralField multiply(const SpectralField& f, const SpectralField& g);
SpectralField map_pointwise(const SpectralField& f, const std::function<double(double)>& fn);
/// amplitude * cos(m . x k0).
SpectralField tone(const Grid& g, const std::array<int, 3>& m, double amplitude = 1.0);
/// All k-th order partial derivatives, stacked as components.
VectorField derivatives(const SpectralField& f, int k);
SpectralField without_mean(SpectralField f);

/// 1/q = 1/p1 + 1/p2 - sigma/d; throws RejectedCase unless 0 <= 1/q <= 1.
double product_exponent_q(int d, double p1, double p2, double sigma);

struct Terms {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio() const { return lhs / rhs; }
};

/// ||fg||_{B^sigma_{p,r}} against ||f||_inf ||g||_{B^sigma} + ||g||_inf ||f||_{B^sigma}.
Terms algebra_terms(const SpectralField& f, const SpectralField& g, double sigma, double p, double r);

/// Low-frequency sup_{j <= j0} 2^{-j s0} ||Delta_j (f g)||_{L^2}.
double low_negative_norm(const SpectralField& product, double s0, int j0);

/// [v . grad, d_ell Delta_j] a.
SpectralField commutator(const VectorField& v, const SpectralField& a, int j, int ell);

/// Smooth F with F(0) = 0 applied pointwise.
struct Composition {
  std::string name;
  std::function<double(double)> fn;
};
/// "identity", "rational" (a/(1+a)), "pressure" ((1+a)^{gamma-2} - 1), "sin",
/// "shift" (x + 1, violates F(0) = 0); throws ConfigError otherwise.
Composition named_composition(const std::string& name, double gamma = 1.4);

/// variant "bernstein": ||D^k f||_{L^b} / (lambda^{k + d(1/a - 1/b)} ||f||_{L^a}),
/// f ball-limited with radius lambda.
/// variant "multiplier": ||Lambda^k f||_{L^a} / (2^{j k} ||f||_{L^a}) for f in
/// annulus `block`; extras carry the band ends (3/4)^k and (8/3)^k.
RatioReport check_bernstein(const InequalityCase& c);

/// variant "algebra", "bilinear" or "negative" (the three product statements).
RatioReport check_product_laws(const InequalityCase& c);

/// Low-frequency product of a function with a high-frequency one, both forms,
/// with N0 scanned over [n0_min, n0_max]. G lives in annulus j0 + 3 and F in
/// the ball of radius lambda.
RatioReport check_nonclassical_product(const InequalityCase& c);

/// ||F(f)||_{B^sigma_{p,r}} / ||f||_{B^sigma_{p,r}} with ||f||_inf = amplitude.
RatioReport check_composition(const InequalityCase& c);
RatioReport check_composition(const InequalityCase& c, const Composition& F);

/// Per-trial ratio sum_j 2^{j(sigma-1)} max_ell ||[v.grad, d_ell Delta_j] a||_{L^p}
/// over ||grad v||_{B^{d/p1}_{p1,1}} ||grad a||_{B^{sigma-1}_{p,1}}.
RatioReport check_commutator(const InequalityCase& c);

/// variant "embedding": L^p against B^0_{p,1} and B^0_{p,inf};
/// variant "interpolation": B^{theta s1 + (1-theta) s2} against the product of
/// the endpoint norms.
RatioReport check_embedding_interpolation(const InequalityCase& c);

struct ConvolutionParams {
  double sigma1 = 1.0;
  double sigma2 = 2.0;
  double theta = 0.0;
  std::vector<double> times{1.0, 10.0, 100.0, 1000.0};
};

/// int_0^t <t - tau>^{-sigma1} tau^{-theta} <tau>^{theta - sigma2} dtau.
double convolution_integral(const ConvolutionParams& p, double t);
/// LHS(t) against <t>^{-sigma1} on the time list.
RatioReport check_time_convolution(const ConvolutionParams& p);

}  // namespace nsp::ineq
