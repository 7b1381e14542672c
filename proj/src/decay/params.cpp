#include "nsp/decay/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsp/error.hpp"

namespace nsp::decay {

double japanese(double t) { return std::sqrt(1.0 + t * t); }

void DecayParams::validate() const {
  if (d != 2 && d != 3) throw ConfigError("d must be 2 or 3");
  const double p_max = d > 2 ? std::min(4.0, 2.0 * d / (d - 2.0)) : 4.0;
  if (!(p >= 2.0 && p <= p_max)) throw ConfigError("2 <= p <= min(4, 2d/(d-2)) is required");
  if (d == 2 && p == 4.0) throw ConfigError("p != 4 if d = 2");
  if (!(s1 > 1.0 - 0.5 * d && s1 <= s0() + 1e-12)) throw ConfigError("1 - d/2 < s1 <= s0 is required");
  if (!(epsilon > 0.0 && epsilon <= 0.1)) throw ConfigError("0 < epsilon <= 0.1 is required");
  for (double s : s_samples)
    if (!(s >= s_min() - 1e-12 && s <= s_max() + 1e-12))
      throw ConfigError("eps - s1 <= s <= d/2 + 1 is required for every s sample");
}

std::vector<double> DecayParams::sample_grid() const {
  std::vector<double> g = s_samples;
  if (g.empty()) g = {s_min(), 0.0, 0.5 * d - 1.0, 0.5 * d, s_max()};
  std::vector<double> out;
  for (double s : g)
    if (s >= s_min() - 1e-12 && s <= s_max() + 1e-12) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            out.end());
  return out;
}

}  // namespace nsp::decay
