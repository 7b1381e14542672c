#include "nsp/spectral/field.hpp"

#include <cmath>

#include "nsp/error.hpp"

namespace nsp::spectral {

SpectralField::SpectralField(const Grid& g) : grid_(g), coeffs_(g.spectral_size()) {}

SpectralField::SpectralField(const Grid& g, std::vector<Complex> coeffs)
    : grid_(g), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != g.spectral_size())
    throw StructuralError("coefficient count does not match the grid");
}

bool SpectralField::is_mean_zero() const {
  if (coeffs_.empty() || coeffs_[0] == Complex{}) return true;
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  return std::abs(coeffs_[0]) <= 1e-13 * scale;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "field addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "field subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

VectorField zero_vector(const Grid& g) { return VectorField(g.dim, SpectralField(g)); }

VectorField operator+(VectorField a, const VectorField& b) {
  if (a.size() != b.size()) throw StructuralError("vector fields differ in component count");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

VectorField operator-(VectorField a, const VectorField& b) {
  if (a.size() != b.size()) throw StructuralError("vector fields differ in component count");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

VectorField operator*(double c, VectorField a) {
  for (auto& x : a) x *= c;
  return a;
}

std::array<double, 3> PhysicalField::position(std::size_t i) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const auto n = static_cast<std::size_t>(grid.n);
  for (int a = grid.dim - 1; a >= 0; --a) {
    x[a] = static_cast<double>(i % n) * grid.dx();
    i /= n;
  }
  return x;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw StructuralError(std::string("grid mismatch in ") + where);
}

double hermitian_defect(const SpectralField& f) {
  const auto& lat = lattice(f.grid());
  double defect = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t p = lat.partner[i];
    if (p == Lattice::npos) continue;
    defect = std::max(defect, std::abs(f[p] - std::conj(f[i])));
  }
  return defect;
}

void enforce_hermitian(SpectralField& f) {
  const auto& lat = lattice(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t p = lat.partner[i];
    if (p == Lattice::npos || p < i) continue;
    if (p == i) {
      f[i] = f[i].real();
    } else {
      const Complex avg = 0.5 * (f[i] + std::conj(f[p]));
      f[i] = avg;
      f[p] = std::conj(avg);
    }
  }
}

double spectral_l2_norm(const SpectralField& f) {
  const auto& lat = lattice(f.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += lat.weight[i] * std::norm(f[i]);
  return std::sqrt(f.grid().volume() * sum);
}

double spectral_l2_norm(const VectorField& u) {
  double sum = 0.0;
  for (const auto& c : u) {
    const double v = spectral_l2_norm(c);
    sum += v * v;
  }
  return std::sqrt(sum);
}

}  // namespace nsp::spectral
