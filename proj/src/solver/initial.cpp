#include "nsp/solver/initial.hpp"

#include "nsp/error.hpp"
#include "nsp/spectral/norms.hpp"
#include "nsp/spectral/random.hpp"

namespace nsp::solver {

FluidState random_initial_state(const spectral::Grid& g, double amplitude, double support_radius,
                                std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw DomainError("amplitude must be nonnegative");
  FluidState s(g);
  if (amplitude == 0.0) return s;
  const auto support = spectral::Support::ball(support_radius);
  s.a = spectral::random_field(g, support, spectral::derive_seed(seed, 0));
  s.a *= amplitude / spectral::lp_norm(s.a, spectral::kInf);
  for (int c = 0; c < g.dim; ++c)
    s.u[c] = spectral::random_field(g, support, spectral::derive_seed(seed, 1 + c));
  const double umax = spectral::lp_norm(s.u, spectral::kInf);
  for (auto& c : s.u) c *= amplitude / umax;
  return s;
}

}  // namespace nsp::solver
