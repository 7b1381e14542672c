#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nsp/spectral/grid.hpp"

namespace nsp::spectral {

using Complex = std::complex<double>;

/// Real-valued scalar field held as Fourier-series coefficients
/// f(x) = sum_xi c(xi) exp(i xi.x) in half-spectrum storage.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& g);
  SpectralField(const Grid& g, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Zero-mode coefficient is negligible next to the rest of the spectrum.
  bool is_mean_zero() const;
  Complex mean() const { return coeffs_.empty() ? Complex{} : coeffs_[0]; }
  void remove_mean() { if (!coeffs_.empty()) coeffs_[0] = 0.0; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double c);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

using VectorField = std::vector<SpectralField>;

VectorField zero_vector(const Grid& g);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double c, VectorField a);

/// Physical-space samples of a real field.
struct PhysicalField {
  Grid grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(const Grid& g) : grid(g), values(g.physical_size(), 0.0) {}

  /// Coordinates of sample i.
  std::array<double, 3> position(std::size_t i) const;
};

/// Samples `fn` at every grid point.
template <class Fn>
PhysicalField sample(const Grid& g, Fn&& fn) {
  PhysicalField f(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(f.position(i));
  return f;
}

/// Throws StructuralError unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

/// Largest |c(-xi) - conj c(xi)| over the self-conjugate planes.
double hermitian_defect(const SpectralField& f);
/// Replaces the self-conjugate planes by their Hermitian part.
void enforce_hermitian(SpectralField& f);

/// sqrt(V * sum |c|^2) over the full spectrum (equals the L2 norm).
double spectral_l2_norm(const SpectralField& f);
double spectral_l2_norm(const VectorField& f);

}  // namespace nsp::spectral
