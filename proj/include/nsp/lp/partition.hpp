#pragma once

#include "nsp/spectral/field.hpp"

namespace nsp::lp {

using spectral::Grid;
using spectral::SpectralField;
using spectral::VectorField;

/// Smooth radial cutoff: 1 on [0, 3/4], 0 on [4/3, inf), with the C-infinity
/// exp(-1/x) step in between.
double chi(double r);
/// Dyadic bump chi(r/2) - chi(r), supported in [3/4, 8/3].
double phi(double r);

/// Homogeneous Littlewood-Paley partition restricted to the blocks that can
/// see a nonzero lattice radius of `grid`.
struct DyadicPartition {
  Grid grid;
  int j_min = 0;
  int j_max = 0;

  double block_weight(int j, double r) const;    // phi(2^-j r)
  double lowcut_weight(int j, double r) const;   // chi(2^-j r)
  /// Largest |sum_j phi(2^-j r) - 1| over the nonzero lattice radii.
  double partition_error() const;
};

DyadicPartition build_partition(const Grid& g);

/// Delta_j f = phi(2^-j D) f.
SpectralField dyadic_block(const SpectralField& f, int j);
/// S_j f = chi(2^-j D) f.
SpectralField low_cut(const SpectralField& f, int j);

}  // namespace nsp::lp
