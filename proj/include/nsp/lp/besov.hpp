#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nsp/lp/partition.hpp"

namespace nsp::lp {

enum class Restriction { all, low, high };

/// Parameters of a homogeneous Besov norm, optionally restricted to low
/// (j <= j0) or high (j >= j0 - 1) frequencies.
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;  // 1, 2 or infinity
  Restriction restriction = Restriction::all;
  int j0 = 0;

  void validate() const;
  /// Block indices summed for this spec on the given partition; empty when
  /// hi < lo.
  std::pair<int, int> block_range(const DyadicPartition& part) const;
};

BesovSpec low(BesovSpec spec, int j0);
BesovSpec high(BesovSpec spec, int j0);

/// L^p norms of Delta_j f for j = lo..hi. p = 2 uses Parseval.
std::vector<double> block_norms(const SpectralField& f, double p, int lo, int hi);
std::vector<double> block_norms(const VectorField& u, double p, int lo, int hi);

/// ||(2^{j s} b_j)_j||_{l^r} for blocks b_j indexed from `lo`.
double weighted_sequence_norm(std::span<const double> blocks, int lo, double s, double r);

double besov_norm(const SpectralField& f, const BesovSpec& spec);
/// Besov norm of the pointwise Euclidean magnitude blocks of a vector field.
double besov_norm(const VectorField& u, const BesovSpec& spec);

/// One time sample of a field history.
struct TimedField {
  double t = 0.0;
  VectorField components;  // a scalar field is a one-component vector
};

/// Chemin-Lerner norm ||(2^{j s} ||w(t) Delta_j f||_{L^theta_T(L^p)})||_{l^r};
/// theta is 1 (trapezoid on the sample times) or infinity (sup). `weight`
/// multiplies the block norm at each time when given.
double chemin_lerner_norm(std::span<const TimedField> series, double theta, const BesovSpec& spec,
                          const std::function<double(double)>& weight = {});

/// Time norm of sampled values: trapezoid for theta = 1, sup for infinity.
double time_norm(std::span<const double> times, std::span<const double> values, double theta);

}  // namespace nsp::lp
