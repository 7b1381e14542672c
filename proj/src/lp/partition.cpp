#include "nsp/lp/partition.hpp"

#include <cmath>

#include "nsp/spectral/operators.hpp"

namespace nsp::lp {
namespace {

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 4.0 / 3.0;

double smooth_step_kernel(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double chi(double r) {
  r = std::abs(r);
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  const double x = (kOuter - r) / (kOuter - kInner);
  const double a = smooth_step_kernel(x);
  const double b = smooth_step_kernel(1.0 - x);
  return a / (a + b);
}

double phi(double r) { return chi(0.5 * r) - chi(r); }

double DyadicPartition::block_weight(int j, double r) const { return phi(std::ldexp(r, -j)); }

double DyadicPartition::lowcut_weight(int j, double r) const { return chi(std::ldexp(r, -j)); }

double DyadicPartition::partition_error() const {
  const auto& lat = spectral::lattice(grid);
  double err = 0.0;
  for (std::size_t i = 1; i < lat.size(); ++i) {
    double sum = 0.0;
    for (int j = j_min; j <= j_max; ++j) sum += block_weight(j, lat.radius[i]);
    err = std::max(err, std::abs(sum - 1.0));
  }
  return err;
}

DyadicPartition build_partition(const Grid& g) {
  const auto& lat = spectral::lattice(g);
  DyadicPartition part;
  part.grid = g;
  // Block j can be nonzero iff 3/4 2^j < r < 8/3 2^j for some lattice radius.
  part.j_min = static_cast<int>(std::floor(std::log2(3.0 * g.k0() / 8.0))) + 1;
  part.j_max = static_cast<int>(std::ceil(std::log2(4.0 * lat.max_radius() / 3.0))) - 1;
  return part;
}

SpectralField dyadic_block(const SpectralField& f, int j) {
  return spectral::apply_radial(f, [j](double r) { return phi(std::ldexp(r, -j)); }, 0.0);
}

SpectralField low_cut(const SpectralField& f, int j) {
  return spectral::apply_radial(f, [j](double r) { return chi(std::ldexp(r, -j)); }, 1.0);
}

}  // namespace nsp::lp
