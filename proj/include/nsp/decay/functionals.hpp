#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "nsp/decay/params.hpp"
#include "nsp/fluid_state.hpp"
#include "nsp/norm_series.hpp"

namespace nsp::decay {

/// Constituents of the functionals. Low ones use L^2 blocks j <= j0, high ones
/// L^p blocks j >= j0 - 1. Vector combinations use the pointwise Euclidean
/// magnitude, e.g. (Lambda^-1 a, u) or (grad a, u).
enum class Constituent {
  pair_low,      // (Lambda^-1 a, u)
  a_low,         // a
  u_low,         // u
  a_gradu_low,   // (a, grad u)
  grada_u_high,  // (grad a, u)
  a_gradu_high,  // (a, grad u)
  gradu_high,    // grad u
};

const char* constituent_name(Constituent c);
std::vector<Constituent> all_constituents();

/// Block norms of one constituent at each recorded time; blocks[k][j - lo].
struct BlockHistory {
  int lo = 0, hi = -1;
  double p = 2.0;
  std::vector<double> times;
  std::vector<std::vector<double>> blocks;
};

/// Per-block norm histories collected along a trajectory.
class BlockBundle {
 public:
  BlockBundle(const spectral::Grid& g, const DecayParams& params,
              std::vector<Constituent> which = all_constituents());

  /// Appends block norms of the state; times must increase strictly and a
  /// must be mean-zero.
  void add(const FluidState& state);

  bool has(Constituent c) const { return hist_.count(c) != 0; }
  /// Throws StructuralError when the constituent was not collected.
  const BlockHistory& get(Constituent c) const;
  const std::vector<double>& times() const { return times_; }
  const DecayParams& params() const { return params_; }
  const spectral::Grid& grid() const { return grid_; }

 private:
  spectral::Grid grid_;
  DecayParams params_;
  std::vector<double> times_;
  std::map<Constituent, BlockHistory> hist_;
};

/// Time-weighted series at regularity s:
///   "low:s=<s>"   <t>^{(s1+s)/2} ||(a~, u)||^l in B^s_{2,1},
///   "high:grada_u" <t>^alpha ||(grad a, u)||^h in B^{d/p-1}_{p,1},
///   "high:gradu"  t^alpha ||grad u||^h in B^{d/p}_{p,1}.
/// Throws DomainError when s lies outside [eps - s1, d/2 + 1].
NormSeries weighted_norm_series(const BlockBundle& bundle, double s);

/// Running D_p(t) at every recorded time, with components "D_low",
/// "D_high_1", "D_high_2" and their sum "D_p". The high terms are
/// Chemin-Lerner norms (sup in time inside the block sum).
NormSeries functional_D(const BlockBundle& bundle);

/// Running E_p(t): "E_p" and its five terms "E_1" .. "E_5". Time integrals
/// use the trapezoid rule on the recorded times.
NormSeries functional_E(const BlockBundle& bundle);

}  // namespace nsp::decay
