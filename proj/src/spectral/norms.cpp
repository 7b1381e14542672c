#include "nsp/spectral/norms.hpp"

#include <cmath>

#include "nsp/error.hpp"
#include "nsp/spectral/fft.hpp"

namespace nsp::spectral {

void validate_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw DomainError(std::string("exponent ") + name + " must lie in [1, inf]");
}

namespace {

double lp_of_magnitudes(const std::vector<double>& mag, const Grid& g, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : mag) m = std::max(m, v);
    return m;
  }
  // Scale by the maximum to keep large p from overflowing.
  double scale = 0.0;
  for (double v : mag) scale = std::max(scale, v);
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : mag) sum += std::pow(v / scale, p);
  return scale * std::pow(sum * g.cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const PhysicalField& f, double p) {
  validate_exponent(p, "p");
  std::vector<double> mag(f.values.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(f.values[i]);
  return lp_of_magnitudes(mag, f.grid, p);
}

double lp_norm(const SpectralField& f, double p) { return lp_norm(to_physical(f), p); }

double lp_norm(const std::vector<PhysicalField>& u, double p) {
  validate_exponent(p, "p");
  if (u.empty()) return 0.0;
  std::vector<double> mag(u.front().values.size(), 0.0);
  for (const auto& c : u) {
    require_same_grid(u.front().grid, c.grid, "vector L^p norm");
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += c.values[i] * c.values[i];
  }
  for (double& v : mag) v = std::sqrt(v);
  return lp_of_magnitudes(mag, u.front().grid, p);
}

double lp_norm(const VectorField& u, double p) {
  std::vector<PhysicalField> phys;
  phys.reserve(u.size());
  for (const auto& c : u) phys.push_back(to_physical(c));
  return lp_norm(phys, p);
}

}  // namespace nsp::spectral
