#include "nsp/decay/functionals.hpp"

#include <charconv>
#include <cmath>

#include "nsp/error.hpp"
#include "nsp/lp/besov.hpp"
#include "nsp/spectral/operators.hpp"

namespace nsp::decay {

using spectral::VectorField;

namespace {

bool is_low(Constituent c) {
  return c == Constituent::pair_low || c == Constituent::a_low || c == Constituent::u_low ||
         c == Constituent::a_gradu_low;
}

VectorField join(VectorField a, const VectorField& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

VectorField gradient_of_all(const VectorField& u) {
  VectorField out;
  for (const auto& c : u) {
    const auto g = spectral::gradient(c);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

VectorField assemble(Constituent c, const FluidState& s) {
  switch (c) {
    case Constituent::pair_low:
      return join({spectral::lambda_power(s.a, -1.0)}, s.u);
    case Constituent::a_low:
      return {s.a};
    case Constituent::u_low:
      return s.u;
    case Constituent::a_gradu_low:
    case Constituent::a_gradu_high:
      return join({s.a}, gradient_of_all(s.u));
    case Constituent::grada_u_high:
      return join(spectral::gradient(s.a), s.u);
    case Constituent::gradu_high:
      return gradient_of_all(s.u);
  }
  throw StructuralError("unknown constituent");
}

// sum_j 2^{j s} x_j over the block range.
double weighted_sum(const BlockHistory& h, const std::vector<double>& x, double s) {
  double acc = 0.0;
  for (int j = h.lo; j <= h.hi; ++j) acc += std::pow(2.0, j * s) * x[j - h.lo];
  return acc;
}

std::string fmt(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace

const char* constituent_name(Constituent c) {
  switch (c) {
    case Constituent::pair_low: return "pair_low";
    case Constituent::a_low: return "a_low";
    case Constituent::u_low: return "u_low";
    case Constituent::a_gradu_low: return "a_gradu_low";
    case Constituent::grada_u_high: return "grada_u_high";
    case Constituent::a_gradu_high: return "a_gradu_high";
    case Constituent::gradu_high: return "gradu_high";
  }
  return "?";
}

std::vector<Constituent> all_constituents() {
  return {Constituent::pair_low,     Constituent::a_low,        Constituent::u_low,
          Constituent::a_gradu_low,  Constituent::grada_u_high, Constituent::a_gradu_high,
          Constituent::gradu_high};
}

BlockBundle::BlockBundle(const spectral::Grid& g, const DecayParams& params, std::vector<Constituent> which)
    : grid_(g), params_(params) {
  params_.validate();
  if (params_.d != g.dim) throw ConfigError("decay dimension must match the grid dimension");
  const auto part = lp::build_partition(g);
  for (Constituent c : which) {
    BlockHistory h;
    h.p = is_low(c) ? 2.0 : params_.p;
    if (is_low(c)) {
      h.lo = part.j_min;
      h.hi = std::min(part.j_max, params_.j0);
    } else {
      h.lo = std::max(part.j_min, params_.j0 - 1);
      h.hi = part.j_max;
    }
    hist_.emplace(c, std::move(h));
  }
}

void BlockBundle::add(const FluidState& state) {
  spectral::require_same_grid(grid_, state.grid(), "block bundle");
  if (!times_.empty() && !(state.t > times_.back())) throw DomainError("bundle times must increase");
  if (!state.a.is_mean_zero()) throw DomainError("bundle states need a mean-zero density");
  times_.push_back(state.t);
  for (auto& [c, h] : hist_) {
    h.times.push_back(state.t);
    if (h.hi < h.lo) {
      h.blocks.emplace_back();
      continue;
    }
    h.blocks.push_back(lp::block_norms(assemble(c, state), h.p, h.lo, h.hi));
  }
}

const BlockHistory& BlockBundle::get(Constituent c) const {
  const auto it = hist_.find(c);
  if (it == hist_.end())
    throw StructuralError(std::string("bundle is missing constituent ") + constituent_name(c));
  return it->second;
}

NormSeries weighted_norm_series(const BlockBundle& bundle, double s) {
  const auto& P = bundle.params();
  if (!(s >= P.s_min() - 1e-12 && s <= P.s_max() + 1e-12))
    throw DomainError("s must satisfy eps - s1 <= s <= d/2 + 1");
  const auto& pair = bundle.get(Constituent::pair_low);
  const auto& h1 = bundle.get(Constituent::grada_u_high);
  const auto& h2 = bundle.get(Constituent::gradu_high);
  const double a = P.alpha(), dp = P.d / P.p;
  NormSeries out;
  const std::string low = "low:s=" + fmt(s);
  for (std::size_t k = 0; k < bundle.times().size(); ++k) {
    const double t = bundle.times()[k];
    out.add(t, low, std::pow(japanese(t), 0.5 * (P.s1 + s)) * weighted_sum(pair, pair.blocks[k], s));
    out.add(t, "high:grada_u", std::pow(japanese(t), a) * weighted_sum(h1, h1.blocks[k], dp - 1.0));
    out.add(t, "high:gradu", std::pow(t, a) * weighted_sum(h2, h2.blocks[k], dp));
  }
  return out;
}

NormSeries functional_D(const BlockBundle& bundle) {
  const auto& P = bundle.params();
  const auto& pair = bundle.get(Constituent::pair_low);
  const auto& h1 = bundle.get(Constituent::grada_u_high);
  const auto& h2 = bundle.get(Constituent::gradu_high);
  const auto grid = P.sample_grid();
  const double a = P.alpha(), dp = P.d / P.p;
  std::vector<double> low_sup(grid.size(), 0.0);
  std::vector<double> sup1(h1.blocks.empty() ? 0 : h1.blocks[0].size(), 0.0);
  std::vector<double> sup2(h2.blocks.empty() ? 0 : h2.blocks[0].size(), 0.0);
  NormSeries out;
  for (std::size_t k = 0; k < bundle.times().size(); ++k) {
    const double t = bundle.times()[k];
    double low = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double s = grid[i];
      low_sup[i] = std::max(low_sup[i], std::pow(japanese(t), 0.5 * (P.s1 + s)) * weighted_sum(pair, pair.blocks[k], s));
      low = std::max(low, low_sup[i]);
    }
    const double w1 = std::pow(japanese(t), a), w2 = std::pow(t, a);
    for (std::size_t j = 0; j < sup1.size(); ++j) sup1[j] = std::max(sup1[j], w1 * h1.blocks[k][j]);
    for (std::size_t j = 0; j < sup2.size(); ++j) sup2[j] = std::max(sup2[j], w2 * h2.blocks[k][j]);
    const double t1 = weighted_sum(h1, sup1, dp - 1.0);
    const double t2 = weighted_sum(h2, sup2, dp);
    out.add(t, "D_low", low);
    out.add(t, "D_high_1", t1);
    out.add(t, "D_high_2", t2);
    out.add(t, "D_p", low + t1 + t2);
  }
  return out;
}

NormSeries functional_E(const BlockBundle& bundle) {
  const auto& P = bundle.params();
  const auto& al = bundle.get(Constituent::a_low);
  const auto& ul = bundle.get(Constituent::u_low);
  const auto& agl = bundle.get(Constituent::a_gradu_low);
  const auto& gh = bundle.get(Constituent::grada_u_high);
  const auto& agh = bundle.get(Constituent::a_gradu_high);
  const double d = P.d, dp = P.d / P.p;
  auto sized = [](const BlockHistory& h) { return std::vector<double>(h.blocks.empty() ? 0 : h.blocks[0].size(), 0.0); };
  auto sup_a = sized(al), sup_u = sized(ul), sup_g = sized(gh);
  auto int_l = sized(agl), int_h = sized(agh);
  NormSeries out;
  const auto& ts = bundle.times();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    for (std::size_t j = 0; j < sup_a.size(); ++j) sup_a[j] = std::max(sup_a[j], al.blocks[k][j]);
    for (std::size_t j = 0; j < sup_u.size(); ++j) sup_u[j] = std::max(sup_u[j], ul.blocks[k][j]);
    for (std::size_t j = 0; j < sup_g.size(); ++j) sup_g[j] = std::max(sup_g[j], gh.blocks[k][j]);
    if (k > 0) {
      const double h = 0.5 * (ts[k] - ts[k - 1]);
      for (std::size_t j = 0; j < int_l.size(); ++j) int_l[j] += h * (agl.blocks[k][j] + agl.blocks[k - 1][j]);
      for (std::size_t j = 0; j < int_h.size(); ++j) int_h[j] += h * (agh.blocks[k][j] + agh.blocks[k - 1][j]);
    }
    const double e1 = weighted_sum(al, sup_a, 0.5 * d - 2.0);
    const double e2 = weighted_sum(ul, sup_u, 0.5 * d - 1.0);
    const double e3 = weighted_sum(agl, int_l, 0.5 * d);
    const double e4 = weighted_sum(gh, sup_g, dp - 1.0);
    const double e5 = weighted_sum(agh, int_h, dp);
    const double t = ts[k];
    out.add(t, "E_1", e1);
    out.add(t, "E_2", e2);
    out.add(t, "E_3", e3);
    out.add(t, "E_4", e4);
    out.add(t, "E_5", e5);
    out.add(t, "E_p", e1 + e2 + e3 + e4 + e5);
  }
  return out;
}

}  // namespace nsp::decay
