#include "nsp/spectral/grid.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "nsp/error.hpp"

namespace nsp::spectral {

Grid::Grid(int dim_, int n_, double length_) : dim(dim_), n(n_), length(length_) {
  if (dim != 2 && dim != 3) throw DomainError("grid dimension must be 2 or 3");
  if (n < 8 || (n & (n - 1)) != 0) throw DomainError("points per axis must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("torus side length must be positive");
}

double Grid::k0() const { return 2.0 * std::numbers::pi / length; }

double Grid::cell_volume() const { return std::pow(dx(), dim); }

double Grid::volume() const { return std::pow(length, dim); }

std::size_t Grid::physical_size() const {
  std::size_t s = 1;
  for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

std::size_t Grid::spectral_size() const {
  return physical_size() / static_cast<std::size_t>(n) * static_cast<std::size_t>(half());
}

double Lattice::max_radius() const {
  double m = 0.0;
  for (double r : radius) m = std::max(m, r);
  return m;
}

std::size_t Lattice::find(const std::array<int, 3>& m) const {
  const int n = grid.n;
  const int d = grid.dim;
  for (int a = 0; a < d; ++a)
    if (std::abs(m[a]) >= n / 2) return npos;
  std::array<int, 3> q = m;
  if (q[d - 1] < 0)
    for (int a = 0; a < d; ++a) q[a] = -q[a];
  std::size_t idx = 0;
  for (int a = 0; a < d - 1; ++a) idx = idx * n + static_cast<std::size_t>((q[a] + n) % n);
  return idx * grid.half() + static_cast<std::size_t>(q[d - 1]);
}

namespace {

std::unique_ptr<Lattice> build_lattice(const Grid& g) {
  auto lat = std::make_unique<Lattice>();
  lat->grid = g;
  const std::size_t size = g.spectral_size();
  lat->index.resize(size);
  lat->k.resize(size);
  lat->kd.resize(size);
  lat->radius.resize(size);
  lat->nyquist.resize(size);
  lat->dealias_keep.resize(size);
  lat->weight.resize(size);
  lat->partner.assign(size, Lattice::npos);

  const int n = g.n, d = g.dim, h = g.half();
  const double k0 = g.k0();
  auto signed_index = [n](int i) { return i <= n / 2 - 1 ? i : i - n; };

  std::array<int, 3> shape{n, n, n};
  shape[d - 1] = h;
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::array<int, 3> raw{0, 0, 0};
    std::size_t rem = idx;
    for (int a = d - 1; a >= 0; --a) {
      raw[a] = static_cast<int>(rem % shape[a]);
      rem /= shape[a];
    }
    std::array<int, 3> m{0, 0, 0};
    bool nyq = false;
    for (int a = 0; a < d - 1; ++a) {
      m[a] = signed_index(raw[a]);
      if (raw[a] == n / 2) nyq = true;
    }
    m[d - 1] = raw[d - 1];
    if (raw[d - 1] == n / 2) nyq = true;

    double r2 = 0.0;
    bool keep = true;
    for (int a = 0; a < d; ++a) {
      const double ka = m[a] * k0;
      lat->k[idx][a] = ka;
      lat->kd[idx][a] = raw[a] == n / 2 ? 0.0 : ka;
      r2 += ka * ka;
      if (3 * std::abs(m[a]) >= n) keep = false;
    }
    lat->index[idx] = m;
    lat->radius[idx] = std::sqrt(r2);
    lat->nyquist[idx] = nyq;
    lat->dealias_keep[idx] = keep && !nyq;
    const bool self_plane = raw[d - 1] == 0 || raw[d - 1] == n / 2;
    lat->weight[idx] = self_plane ? 1.0 : 2.0;
    if (self_plane) {
      std::size_t p = 0;
      for (int a = 0; a < d - 1; ++a) p = p * n + static_cast<std::size_t>((n - raw[a]) % n);
      lat->partner[idx] = p * h + static_cast<std::size_t>(raw[d - 1]);
    }
  }
  return lat;
}

}  // namespace

const Lattice& lattice(const Grid& g) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::unique_ptr<Lattice>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(g.dim, g.n, g.length);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_lattice(g)).first;
  return *it->second;
}

}  // namespace nsp::spectral
