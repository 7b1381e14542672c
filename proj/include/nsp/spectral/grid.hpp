#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nsp::spectral {

/// Periodic torus [0, L)^d sampled with n points per axis.
///
/// Physical samples are stored row-major with the last axis fastest. The
/// spectral layout is the real-to-complex half spectrum: n x ... x (n/2 + 1).
struct Grid {
  int dim = 2;
  int n = 8;
  double length = 0.0;

  Grid() = default;
  Grid(int dim, int n, double length);

  double k0() const;  // 2 pi / L, the smallest nonzero |xi|
  double dx() const { return length / n; }
  double cell_volume() const;
  double volume() const;
  std::size_t physical_size() const;
  std::size_t spectral_size() const;
  int half() const { return n / 2 + 1; }

  bool operator==(const Grid&) const = default;
};

/// Per-mode frequency data for the half spectrum of a grid.
///
/// `k` carries the true frequency (Nyquist components at -n/2 k0), `kd` the
/// frequency used by odd-order derivatives, where Nyquist components are 0.
struct Lattice {
  Grid grid;
  std::vector<std::array<int, 3>> index;
  std::vector<std::array<double, 3>> k;
  std::vector<std::array<double, 3>> kd;
  std::vector<double> radius;
  std::vector<unsigned char> nyquist;
  std::vector<unsigned char> dealias_keep;
  /// Multiplicity in the full spectrum (1 on the self-conjugate planes, else 2).
  std::vector<double> weight;
  /// For modes on the self-conjugate planes, the index of the -xi mode.
  std::vector<std::size_t> partner;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t size() const { return radius.size(); }
  /// Largest |xi| present on the grid.
  double max_radius() const;
  /// Spectral index of the integer wavevector m, or npos if m sits at or past
  /// Nyquist on some axis.
  std::size_t find(const std::array<int, 3>& m) const;
};

/// Cached lattice for a grid; the returned reference stays valid for the
/// lifetime of the process.
const Lattice& lattice(const Grid& g);

}  // namespace nsp::spectral
