#include "nsp/lp/besov.hpp"

#include <cmath>

#include "nsp/error.hpp"
#include "nsp/spectral/fft.hpp"
#include "nsp/spectral/norms.hpp"

namespace nsp::lp {

void BesovSpec::validate() const {
  spectral::validate_exponent(p, "p");
  if (!(r == 1.0 || r == 2.0 || std::isinf(r)))
    throw DomainError("Besov summation exponent r must be 1, 2 or infinity");
  if (!std::isfinite(s)) throw DomainError("Besov regularity must be finite");
}

std::pair<int, int> BesovSpec::block_range(const DyadicPartition& part) const {
  int lo = part.j_min, hi = part.j_max;
  if (restriction == Restriction::low) hi = std::min(hi, j0);
  if (restriction == Restriction::high) lo = std::max(lo, j0 - 1);
  return {lo, hi};
}

BesovSpec low(BesovSpec spec, int j0) {
  spec.restriction = Restriction::low;
  spec.j0 = j0;
  return spec;
}

BesovSpec high(BesovSpec spec, int j0) {
  spec.restriction = Restriction::high;
  spec.j0 = j0;
  return spec;
}

namespace {

// Parseval shortcut for ||Delta_j f||_{L^2}^2.
double block_l2_squared(const SpectralField& f, int j) {
  const auto& lat = spectral::lattice(f.grid());
  double sum = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double w = phi(std::ldexp(lat.radius[i], -j));
    if (w != 0.0) sum += lat.weight[i] * w * w * std::norm(f[i]);
  }
  return f.grid().volume() * sum;
}

}  // namespace

std::vector<double> block_norms(const VectorField& u, double p, int lo, int hi) {
  spectral::validate_exponent(p, "p");
  std::vector<double> out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int j = lo; j <= hi; ++j) {
    if (p == 2.0) {
      double sum = 0.0;
      for (const auto& c : u) sum += block_l2_squared(c, j);
      out.push_back(std::sqrt(sum));
    } else {
      VectorField blocks;
      blocks.reserve(u.size());
      for (const auto& c : u) blocks.push_back(dyadic_block(c, j));
      out.push_back(spectral::lp_norm(blocks, p));
    }
  }
  return out;
}

std::vector<double> block_norms(const SpectralField& f, double p, int lo, int hi) {
  return block_norms(VectorField{f}, p, lo, hi);
}

double weighted_sequence_norm(std::span<const double> blocks, int lo, double s, double r) {
  double acc = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const double v = std::exp2(s * (lo + static_cast<int>(k))) * blocks[k];
    if (std::isinf(r))
      acc = std::max(acc, v);
    else if (r == 1.0)
      acc += v;
    else
      acc += v * v;
  }
  return r == 2.0 ? std::sqrt(acc) : acc;
}

double besov_norm(const VectorField& u, const BesovSpec& spec) {
  spec.validate();
  if (u.empty()) return 0.0;
  for (const auto& c : u) {
    spectral::require_same_grid(u.front().grid(), c.grid(), "Besov norm");
    if (!c.is_mean_zero()) throw DomainError("homogeneous Besov norm requires a mean-zero field");
  }
  const auto part = build_partition(u.front().grid());
  const auto [lo, hi] = spec.block_range(part);
  const auto blocks = block_norms(u, spec.p, lo, hi);
  return weighted_sequence_norm(blocks, lo, spec.s, spec.r);
}

double besov_norm(const SpectralField& f, const BesovSpec& spec) {
  return besov_norm(VectorField{f}, spec);
}

double time_norm(std::span<const double> times, std::span<const double> values, double theta) {
  if (times.size() != values.size()) throw StructuralError("time and value counts differ");
  if (std::isinf(theta)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  if (theta != 1.0) throw DomainError("time exponent must be 1 or infinity");
  double acc = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    acc += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
  return acc;
}

double chemin_lerner_norm(std::span<const TimedField> series, double theta, const BesovSpec& spec,
                          const std::function<double(double)>& weight) {
  spec.validate();
  if (series.empty()) throw DomainError("Chemin-Lerner norm of an empty series");
  if (!(theta == 1.0 || std::isinf(theta))) throw DomainError("time exponent must be 1 or infinity");
  for (std::size_t i = 1; i < series.size(); ++i)
    if (!(series[i].t > series[i - 1].t)) throw DomainError("series must be strictly time-sorted");

  const Grid& g = series.front().components.front().grid();
  const auto part = build_partition(g);
  const auto [lo, hi] = spec.block_range(part);
  if (hi < lo) return 0.0;

  const std::size_t nb = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<double>> per_block(nb, std::vector<double>(series.size()));
  std::vector<double> times(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    for (const auto& c : series[k].components)
      if (!c.is_mean_zero()) throw DomainError("homogeneous Besov norm requires a mean-zero field");
    times[k] = series[k].t;
    const double w = weight ? weight(series[k].t) : 1.0;
    const auto b = block_norms(series[k].components, spec.p, lo, hi);
    for (std::size_t j = 0; j < nb; ++j) per_block[j][k] = w * b[j];
  }
  std::vector<double> reduced(nb);
  for (std::size_t j = 0; j < nb; ++j) reduced[j] = time_norm(times, per_block[j], theta);
  return weighted_sequence_norm(reduced, lo, spec.s, spec.r);
}

}  // namespace nsp::lp
