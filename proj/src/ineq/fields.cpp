#include <cmath>

#include "nsp/error.hpp"
#include "nsp/ineq/checks.hpp"
#include "nsp/lp/partition.hpp"
#include "nsp/spectral/fft.hpp"
#include "nsp/spectral/operators.hpp"

namespace nsp::ineq {

void InequalityCase::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("dim must be 2 or 3");
  if (!(length > 0.0)) throw ConfigError("length must be positive");
  if (grids.empty()) throw ConfigError("at least one grid size is required");
  for (int n : grids)
    if (n < 8 || n % 2 != 0) throw ConfigError("grid sizes must be even and at least 8");
  if (trials < 1) throw ConfigError("trials must be positive");
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  spectral::require_same_grid(f.grid(), g.grid(), "multiply");
  auto x = spectral::to_physical(f);
  const auto y = spectral::to_physical(g);
  for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] *= y.values[i];
  return spectral::to_spectral(x);
}

SpectralField map_pointwise(const SpectralField& f, const std::function<double(double)>& fn) {
  auto x = spectral::to_physical(f);
  for (double& v : x.values) v = fn(v);
  return spectral::to_spectral(x);
}

SpectralField tone(const Grid& g, const std::array<int, 3>& m, double amplitude) {
  const double k0 = g.k0();
  return spectral::to_spectral(spectral::sample(g, [&](const std::array<double, 3>& x) {
    double phase = 0.0;
    for (int i = 0; i < g.dim; ++i) phase += m[i] * k0 * x[i];
    return amplitude * std::cos(phase);
  }));
}

VectorField derivatives(const SpectralField& f, int k) {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  VectorField out{f};
  for (int i = 0; i < k; ++i) {
    VectorField next;
    for (const auto& c : out) {
      const auto g = spectral::gradient(c);
      next.insert(next.end(), g.begin(), g.end());
    }
    out = std::move(next);
  }
  return out;
}

SpectralField without_mean(SpectralField f) {
  f.remove_mean();
  return f;
}

double product_exponent_q(int d, double p1, double p2, double sigma) {
  const double inv = 1.0 / p1 + 1.0 / p2 - sigma / d;
  if (inv < -1e-14 || inv > 1.0 + 1e-14) throw RejectedCase("0 <= 1/q = 1/p1 + 1/p2 - sigma/d <= 1 is required");
  return inv <= 1e-14 ? INFINITY : 1.0 / inv;
}

SpectralField commutator(const VectorField& v, const SpectralField& a, int j, int ell) {
  if (static_cast<int>(v.size()) != a.grid().dim) throw StructuralError("velocity needs one component per axis");
  auto transport = [&v](const SpectralField& w) {
    SpectralField acc(w.grid());
    for (int i = 0; i < w.grid().dim; ++i) acc += multiply(v[i], spectral::partial(w, i));
    return acc;
  };
  auto op = [j, ell](const SpectralField& w) { return spectral::partial(lp::dyadic_block(w, j), ell); };
  return transport(op(a)) - op(transport(a));
}

Composition named_composition(const std::string& name, double gamma) {
  if (name == "identity") return {name, [](double x) { return x; }};
  if (name == "rational") return {name, [](double x) { return x / (1.0 + x); }};
  if (name == "pressure") return {name, [gamma](double x) { return std::pow(1.0 + x, gamma - 2.0) - 1.0; }};
  if (name == "sin") return {name, [](double x) { return std::sin(x); }};
  if (name == "shift") return {name, [](double x) { return x + 1.0; }};
  throw ConfigError("unknown composition " + name);
}

}  // namespace nsp::ineq
