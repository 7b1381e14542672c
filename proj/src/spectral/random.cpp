#include "nsp/spectral/random.hpp"

#include <cmath>
#include <map>
#include <random>

#include "nsp/error.hpp"

namespace nsp::spectral {

double Support::inner() const { return kind == Kind::ball ? 0.0 : 0.75 * std::ldexp(1.0, j); }

double Support::outer() const {
  return kind == Kind::ball ? radius : (8.0 / 3.0) * std::ldexp(1.0, j);
}

bool Support::contains(double r) const { return r > 0.0 && r >= inner() && r <= outer(); }

namespace {

// Writes c(m) = value and keeps c(-m) = conj(value) in half storage.
void set_mode(SpectralField& f, const Lattice& lat, const std::array<int, 3>& m, Complex value) {
  const int d = f.grid().dim;
  std::array<int, 3> neg{-m[0], -m[1], -m[2]};
  const std::size_t idx = lat.find(m);
  if (idx == Lattice::npos) return;
  const bool stored_as_is = m[d - 1] > 0 || (m[d - 1] == 0 && lat.index[idx] == m);
  f[idx] = stored_as_is ? value : std::conj(value);
  if (m[d - 1] == 0) {
    const std::size_t pidx = lat.find(neg);
    f[pidx] = stored_as_is ? std::conj(value) : value;
  }
}

// Visits integer wavevectors in a grid-independent order; `fn` sees only the
// canonical representative of each +-m pair.
template <class Fn>
void for_each_canonical(int dim, int bound, Fn&& fn) {
  std::array<int, 3> m{0, 0, 0};
  const int hi2 = dim == 3 ? bound : 0;
  for (m[0] = -bound; m[0] <= bound; ++m[0])
    for (m[1] = -bound; m[1] <= bound; ++m[1])
      for (m[2] = -hi2; m[2] <= hi2; ++m[2]) {
        int first = 0;
        for (int a = 0; a < dim; ++a)
          if (m[a] != 0) {
            first = m[a];
            break;
          }
        if (first > 0) fn(m);
      }
}

int shell_of(double r) { return static_cast<int>(std::floor(std::log2(r))); }

}  // namespace

SpectralField random_field(const Grid& g, const Support& support, std::uint64_t seed,
                           SpectrumLaw law) {
  const auto& lat = lattice(g);
  const double k0 = g.k0();
  const int bound = static_cast<int>(std::floor(support.outer() / k0));
  auto radius_of = [&](const std::array<int, 3>& m) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) r2 += double(m[a]) * m[a];
    return k0 * std::sqrt(r2);
  };

  std::map<int, int> shell_count;
  std::size_t representable = 0;
  for_each_canonical(g.dim, bound, [&](const std::array<int, 3>& m) {
    const double r = radius_of(m);
    if (!support.contains(r)) return;
    ++shell_count[shell_of(r)];
    if (lat.find(m) != Lattice::npos) ++representable;
  });
  if (representable == 0) throw DomainError("random field support contains no lattice mode");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField f(g);
  for_each_canonical(g.dim, bound, [&](const std::array<int, 3>& m) {
    const double r = radius_of(m);
    if (!support.contains(r)) return;
    const double re = normal(rng);
    const double im = normal(rng);
    double scale = std::sqrt(0.5);
    if (law == SpectrumLaw::flat_per_annulus) scale /= std::sqrt(double(shell_count[shell_of(r)]));
    set_mode(f, lat, m, scale * Complex(re, im));
  });
  return f;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (0xd1b54a32d192ed03ULL * (index + 1));
  return splitmix64(state);
}

}  // namespace nsp::spectral
