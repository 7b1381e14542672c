#include "nsp/spectral/operators.hpp"

#include <cmath>

#include "nsp/error.hpp"

namespace nsp::spectral {
namespace {

constexpr Complex I{0.0, 1.0};

void require_vector(const VectorField& u, const char* where) {
  if (u.empty()) throw StructuralError(std::string("empty vector field in ") + where);
  const Grid& g = u.front().grid();
  if (static_cast<int>(u.size()) != g.dim)
    throw StructuralError(std::string("component count differs from dimension in ") + where);
  for (const auto& c : u) require_same_grid(g, c.grid(), where);
}

void require_mean_zero(const SpectralField& f, const char* what) {
  if (!f.is_mean_zero()) throw DomainError(std::string(what) + " requires a mean-zero field");
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol,
                               std::optional<Complex> at_zero) {
  const auto& lat = lattice(f.grid());
  SpectralField out(f.grid());
  if (at_zero) {
    out[0] = *at_zero * f[0];
  } else {
    const Complex s0 = symbol(Wavevector{});
    if (std::isfinite(s0.real()) && std::isfinite(s0.imag())) {
      out[0] = s0 * f[0];
    } else if (!f.is_mean_zero()) {
      throw DomainError("multiplier is singular at xi = 0 and the field has a mean");
    }
  }
  for (std::size_t i = 1; i < f.size(); ++i) {
    out[i] = symbol(Wavevector{lat.k[i], lat.radius[i], lat.nyquist[i] != 0}) * f[i];
  }
  return out;
}

SpectralField apply_radial(const SpectralField& f, const std::function<double(double)>& m,
                           std::optional<double> at_zero) {
  const auto& lat = lattice(f.grid());
  SpectralField out(f.grid());
  if (at_zero) {
    out[0] = *at_zero * f[0];
  } else if (!f.is_mean_zero()) {
    const double m0 = m(0.0);
    if (!std::isfinite(m0)) throw DomainError("radial multiplier is singular at xi = 0 and the field has a mean");
    out[0] = m0 * f[0];
  }
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = m(lat.radius[i]) * f[i];
  return out;
}

SpectralField partial(const SpectralField& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim) throw DomainError("derivative axis out of range");
  const auto& lat = lattice(f.grid());
  SpectralField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = I * lat.kd[i][axis] * f[i];
  return out;
}

VectorField gradient(const SpectralField& f) {
  VectorField g;
  g.reserve(f.grid().dim);
  for (int a = 0; a < f.grid().dim; ++a) g.push_back(partial(f, a));
  return g;
}

SpectralField divergence(const VectorField& u) {
  require_vector(u, "divergence");
  const auto& lat = lattice(u.front().grid());
  SpectralField out(u.front().grid());
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += I * lat.kd[i][a] * u[a][i];
  return out;
}

VectorField curl(const VectorField& u) {
  require_vector(u, "curl");
  const Grid& g = u.front().grid();
  if (g.dim == 2) return {partial(u[1], 0) - partial(u[0], 1)};
  return {partial(u[2], 1) - partial(u[1], 2), partial(u[0], 2) - partial(u[2], 0),
          partial(u[1], 0) - partial(u[0], 1)};
}

SpectralField laplacian(const SpectralField& f) {
  return apply_radial(f, [](double r) { return -r * r; }, 0.0);
}

SpectralField lambda_power(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  if (s < 0.0) require_mean_zero(f, "negative-order Lambda");
  SpectralField out = apply_radial(f, [s](double r) { return std::pow(r, s); }, 0.0);
  out[0] = 0.0;
  return out;
}

SpectralField inv_neg_laplacian(const SpectralField& f) {
  require_mean_zero(f, "inverse Laplacian");
  SpectralField out = apply_radial(f, [](double r) { return 1.0 / (r * r); }, 0.0);
  out[0] = 0.0;
  return out;
}

VectorField leray_Q(const VectorField& u) {
  require_vector(u, "Leray projection");
  const Grid& g = u.front().grid();
  const auto& lat = lattice(g);
  VectorField q = zero_vector(g);
  for (std::size_t i = 1; i < lat.size(); ++i) {
    const auto& k = lat.kd[i];
    double k2 = 0.0;
    Complex kdotu = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      k2 += k[a] * k[a];
      kdotu += k[a] * u[a][i];
    }
    if (k2 == 0.0) continue;
    for (int a = 0; a < g.dim; ++a) q[a][i] = k[a] * kdotu / k2;
  }
  return q;
}

VectorField leray_P(const VectorField& u) { return u - leray_Q(u); }

void dealias(SpectralField& f) {
  const auto& lat = lattice(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!lat.dealias_keep[i]) f[i] = 0.0;
}

void dealias(VectorField& u) {
  for (auto& c : u) dealias(c);
}

}  // namespace nsp::spectral
