#include <algorithm>
#include <cmath>
#include <string>

#include "nsp/error.hpp"
#include "nsp/ineq/checks.hpp"
#include "nsp/lp/besov.hpp"
#include "nsp/spectral/norms.hpp"
#include "nsp/spectral/operators.hpp"
#include "nsp/spectral/random.hpp"

namespace nsp::ineq {

using spectral::kInf;
using spectral::Support;

namespace {

double resolvable(const Grid& g) { return (g.n / 2 - 1) * g.k0(); }

void require_band(const Grid& g, double band) {
  if (band > resolvable(g) * (1.0 + 1e-12))
    throw ConfigError("field band " + std::to_string(band) + " exceeds the resolution of grid n=" +
                      std::to_string(g.n));
}

SpectralField draw(const Grid& g, const Support& s, std::uint64_t seed) {
  return spectral::random_field(g, s, seed, spectral::SpectrumLaw::flat_per_annulus);
}

double besov(const SpectralField& f, double s, double p, double r) {
  return lp::besov_norm(f, lp::BesovSpec{s, p, r});
}
double besov(const VectorField& f, double s, double p, double r) {
  return lp::besov_norm(f, lp::BesovSpec{s, p, r});
}

template <class Fn>
void scan(const InequalityCase& c, Fn&& trial) {
  for (int n : c.grids) {
    const Grid g(c.dim, n, c.length);
    for (int t = 0; t < c.trials; ++t) trial(g, spectral::derive_seed(c.seed, static_cast<std::uint64_t>(t)));
  }
}

std::uint64_t sub(std::uint64_t seed, int i) { return spectral::derive_seed(seed, static_cast<std::uint64_t>(i)); }

void require_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw RejectedCase(std::string(name) + " >= 1 is required");
}

}  // namespace

Terms algebra_terms(const SpectralField& f, const SpectralField& g, double sigma, double p, double r) {
  const auto fg = without_mean(multiply(f, g));
  return {besov(fg, sigma, p, r),
          spectral::lp_norm(f, kInf) * besov(g, sigma, p, r) + spectral::lp_norm(g, kInf) * besov(f, sigma, p, r)};
}

double low_negative_norm(const SpectralField& product, double s0, int j0) {
  const auto part = lp::build_partition(product.grid());
  const int hi = std::min(part.j_max, j0);
  if (hi < part.j_min) return 0.0;
  const auto b = lp::block_norms(without_mean(product), 2.0, part.j_min, hi);
  double m = 0.0;
  for (int j = part.j_min; j <= hi; ++j) m = std::max(m, std::pow(2.0, -j * s0) * b[j - part.j_min]);
  return m;
}

RatioReport check_bernstein(const InequalityCase& c) {
  c.validate();
  RatioReport rep(c.name);
  if (c.variant.empty() || c.variant == "bernstein") {
    require_exponent(c.a, "a");
    if (!(c.a <= c.b)) throw RejectedCase("a <= b is required");
    if (c.k < 0) throw RejectedCase("k >= 0 is required");
    if (!(c.lambda > 0.0)) throw RejectedCase("lambda > 0 is required");
    const double expo = c.k + c.dim * (1.0 / c.a - 1.0 / c.b);
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, c.lambda);
      const auto f = draw(g, Support::ball(c.lambda), seed);
      rep.add(g.n, seed, "bernstein", spectral::lp_norm(derivatives(f, c.k), c.b),
              std::pow(c.lambda, expo) * spectral::lp_norm(f, c.a));
    });
    rep.set_extra("exponent", expo);
  } else if (c.variant == "multiplier") {
    require_exponent(c.a, "a");
    const auto support = Support::annulus(c.block);
    const double lam = std::ldexp(1.0, c.block);
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, support.outer());
      const auto f = draw(g, support, seed);
      rep.add(g.n, seed, "multiplier", spectral::lp_norm(spectral::lambda_power(f, c.k), c.a),
              std::pow(lam, c.k) * spectral::lp_norm(f, c.a));
    });
    rep.set_extra("band_lo", std::pow(0.75, c.k));
    rep.set_extra("band_hi", std::pow(8.0 / 3.0, c.k));
    rep.set_extra("min_ratio", rep.min_ratio());
    rep.set_extra("max_ratio", rep.max_ratio());
  } else {
    throw ConfigError("unknown Bernstein variant " + c.variant);
  }
  return rep;
}

RatioReport check_product_laws(const InequalityCase& c) {
  c.validate();
  RatioReport rep(c.name);
  const double d = c.dim;
  const auto ball = Support::ball(c.lambda);
  if (c.variant.empty() || c.variant == "algebra") {
    if (!(c.sigma > 0.0)) throw RejectedCase("sigma > 0 is required");
    require_exponent(c.p, "p");
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, 2.0 * c.lambda);
      const auto t = algebra_terms(draw(g, ball, sub(seed, 0)), draw(g, ball, sub(seed, 1)), c.sigma, c.p, c.r);
      rep.add(g.n, seed, "algebra", t.lhs, t.rhs);
    });
  } else if (c.variant == "bilinear") {
    require_exponent(c.p1, "p1");
    require_exponent(c.p2, "p2");
    if (!(c.sigma1 + c.sigma2 > 0.0)) throw RejectedCase("sigma1 + sigma2 > 0 is required");
    if (!(c.sigma1 <= d / c.p1)) throw RejectedCase("sigma1 <= d/p1 is required");
    if (!(c.sigma2 <= d / c.p2)) throw RejectedCase("sigma2 <= d/p2 is required");
    if (!(c.sigma1 >= c.sigma2)) throw RejectedCase("sigma1 >= sigma2 is required");
    if (!(1.0 / c.p1 + 1.0 / c.p2 <= 1.0 + 1e-14)) throw RejectedCase("1/p1 + 1/p2 <= 1 is required");
    const double q = product_exponent_q(c.dim, c.p1, c.p2, c.sigma1);
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, 2.0 * c.lambda);
      const auto f = draw(g, ball, sub(seed, 0));
      const auto h = draw(g, ball, sub(seed, 1));
      rep.add(g.n, seed, "bilinear", besov(without_mean(multiply(f, h)), c.sigma2, q, 1.0),
              besov(f, c.sigma1, c.p1, 1.0) * besov(h, c.sigma2, c.p2, 1.0));
    });
    rep.set_extra("q", q);
  } else if (c.variant == "negative") {
    require_exponent(c.p1, "p1");
    require_exponent(c.p2, "p2");
    if (!(c.sigma > 0.0)) throw RejectedCase("sigma > 0 is required");
    if (!(d / c.p1 + d / c.p2 - d <= c.sigma + 1e-14 && c.sigma <= std::min(d / c.p1, d / c.p2) + 1e-14))
      throw RejectedCase("d/p1 + d/p2 - d <= sigma <= min(d/p1, d/p2) is required");
    const double q = product_exponent_q(c.dim, c.p1, c.p2, c.sigma);
    const auto top = Support::annulus(c.block);
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, c.lambda + top.outer());
      const auto f = draw(g, ball, sub(seed, 0));
      const double fb = besov(f, c.sigma, c.p1, 1.0);
      // Single annulus, and three adjacent annuli balanced in B^{-sigma}_{p2,inf}.
      const auto single = draw(g, top, sub(seed, 1));
      SpectralField multi(g);
      for (int i = 0; i < 3; ++i) {
        const int j = c.block - i;
        const auto piece = draw(g, Support::annulus(j), sub(seed, 2 + i));
        multi += (std::pow(2.0, j * c.sigma) / spectral::lp_norm(piece, c.p2)) * piece;
      }
      for (const auto& [tag, h] : {std::pair{"g=single", &single}, std::pair{"g=multi", static_cast<const SpectralField*>(&multi)}}) {
        rep.add(g.n, seed, tag, besov(without_mean(multiply(f, *h)), -c.sigma, q, kInf),
                fb * besov(*h, -c.sigma, c.p2, kInf));
      }
    });
    rep.set_extra("q", q);
  } else {
    throw ConfigError("unknown product variant " + c.variant);
  }
  return rep;
}

RatioReport check_nonclassical_product(const InequalityCase& c) {
  c.validate();
  if (!(c.p >= 2.0 && c.p <= 4.0)) throw RejectedCase("2 <= p <= 4 is required");
  if (!(c.sigma > 0.0)) throw RejectedCase("sigma > 0 is required");
  if (c.n0_min < 0 || c.n0_max < c.n0_min) throw ConfigError("0 <= n0_min <= n0_max is required");
  const double d = c.dim;
  const double s0 = 2.0 * d / c.p - d / 2.0;
  const double inv_pstar = 0.5 - 1.0 / c.p;
  const double pstar = inv_pstar <= 0.0 ? kInf : 1.0 / inv_pstar;
  const auto high = Support::annulus(c.j0 + 3);
  const auto ball = Support::ball(c.lambda);
  RatioReport rep(c.name);
  scan(c, [&](const Grid& g, std::uint64_t seed) {
    require_band(g, std::max(c.lambda + high.outer(), 2.0 * c.lambda));
    const auto F = draw(g, ball, sub(seed, 0));
    const auto G = draw(g, high, sub(seed, 1));
    const auto H = draw(g, ball, sub(seed, 2));
    const auto Gh = G - lp::low_cut(G, c.j0);
    const auto Fh = F - lp::low_cut(F, c.j0);

    const double lhs_a = low_negative_norm(multiply(F, Gh), s0, c.j0);
    const double ga = besov(Gh, -c.sigma, c.p, kInf), fa = besov(F, c.sigma, c.p, 1.0);
    const double lhs_b = low_negative_norm(multiply(Fh, H), s0, c.j0);
    const double gb = besov(H, -c.sigma, c.p, kInf), fb = besov(Fh, c.sigma, c.p, 1.0);
    for (int n0 = c.n0_min; n0 <= c.n0_max; ++n0) {
      const std::string suffix = ":N0=" + std::to_string(n0);
      rep.add(g.n, seed, "fg_high" + suffix, lhs_a,
              (fa + spectral::lp_norm(lp::low_cut(F, c.j0 + n0), pstar)) * ga);
      rep.add(g.n, seed, "fhigh_g" + suffix, lhs_b,
              (fb + spectral::lp_norm(lp::low_cut(Fh, c.j0 + n0), pstar)) * gb);
    }
  });
  rep.set_extra("s0", s0);
  rep.set_extra("inv_p_star", inv_pstar);
  for (const char* form : {"fg_high", "fhigh_g"}) {
    const double ref = rep.finest_max(std::string(form) + ":N0=" + std::to_string(c.n0_max));
    int stable = c.n0_max;
    for (int n0 = c.n0_max; n0 >= c.n0_min; --n0) {
      if (std::abs(rep.finest_max(std::string(form) + ":N0=" + std::to_string(n0)) - ref) > 0.1 * ref) break;
      stable = n0;
    }
    rep.set_extra(std::string("n0_stable:") + form, stable);
  }
  return rep;
}

RatioReport check_composition(const InequalityCase& c) {
  return check_composition(c, named_composition(c.variant.empty() ? "rational" : c.variant, c.gamma));
}

RatioReport check_composition(const InequalityCase& c, const Composition& F) {
  c.validate();
  if (std::abs(F.fn(0.0)) > 1e-14) throw RejectedCase("F(0)=0 violated");
  if (!(c.sigma > 0.0)) throw RejectedCase("sigma > 0 is required");
  if (!(c.amplitude > 0.0 && c.amplitude <= 0.5)) throw RejectedCase("0 < ||f||_inf <= 1/2 is required");
  require_exponent(c.p, "p");
  RatioReport rep(c.name);
  scan(c, [&](const Grid& g, std::uint64_t seed) {
    require_band(g, c.lambda);
    auto f = draw(g, Support::ball(c.lambda), seed);
    f *= c.amplitude / spectral::lp_norm(f, kInf);
    rep.add(g.n, seed, F.name, besov(without_mean(map_pointwise(f, F.fn)), c.sigma, c.p, c.r),
            besov(f, c.sigma, c.p, c.r));
  });
  rep.set_extra("amplitude", c.amplitude);
  return rep;
}

RatioReport check_commutator(const InequalityCase& c) {
  c.validate();
  require_exponent(c.p, "p");
  require_exponent(c.p1, "p1");
  const double d = c.dim;
  const double d_pprime = c.p == 1.0 ? 0.0 : d * (1.0 - 1.0 / c.p);
  const double lower = -std::min(d / c.p1, d_pprime), upper = 1.0 + std::min(d / c.p, d / c.p1);
  if (!(c.sigma > lower && c.sigma <= upper))
    throw RejectedCase("-min(d/p1, d/p') < sigma <= 1 + min(d/p, d/p1) is required");
  const auto ball = Support::ball(c.lambda);
  RatioReport rep(c.name);
  scan(c, [&](const Grid& g, std::uint64_t seed) {
    require_band(g, 2.0 * c.lambda);
    const auto a = draw(g, ball, sub(seed, 0));
    VectorField v, grad_v;
    for (int i = 0; i < c.dim; ++i) {
      v.push_back(draw(g, ball, sub(seed, 1 + i)));
      const auto gi = spectral::gradient(v.back());
      grad_v.insert(grad_v.end(), gi.begin(), gi.end());
    }
    const auto part = lp::build_partition(g);
    double lhs = 0.0;
    for (int j = part.j_min; j <= part.j_max; ++j) {
      double cj = 0.0;
      for (int ell = 0; ell < c.dim; ++ell) cj = std::max(cj, spectral::lp_norm(commutator(v, a, j, ell), c.p));
      lhs += std::pow(2.0, j * (c.sigma - 1.0)) * cj;
    }
    rep.add(g.n, seed, "commutator", lhs,
            besov(grad_v, d / c.p1, c.p1, 1.0) * besov(spectral::gradient(a), c.sigma - 1.0, c.p, 1.0));
  });
  double worst = 0.0;
  for (const auto& s : rep.summaries()) {
    rep.set_extra("fitted_C:n=" + std::to_string(s.n), s.median);
    worst = std::max(worst, s.max / s.median);
  }
  rep.set_extra("max_normalized_l1", worst);
  return rep;
}

RatioReport check_embedding_interpolation(const InequalityCase& c) {
  c.validate();
  require_exponent(c.p, "p");
  const auto ball = Support::ball(c.lambda);
  RatioReport rep(c.name);
  if (c.variant.empty() || c.variant == "embedding") {
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, c.lambda);
      const auto f = draw(g, ball, seed);
      const double lp = spectral::lp_norm(f, c.p);
      rep.add(g.n, seed, "lp_over_b0p1", lp, besov(f, 0.0, c.p, 1.0));
      rep.add(g.n, seed, "b0pinf_over_lp", besov(f, 0.0, c.p, kInf), lp);
    });
  } else if (c.variant == "interpolation") {
    if (c.sigma1 == c.sigma2) throw RejectedCase("sigma1 != sigma2 is required");
    if (!(c.theta > 0.0 && c.theta < 1.0)) throw RejectedCase("0 < theta < 1 is required");
    const double s = c.theta * c.sigma1 + (1.0 - c.theta) * c.sigma2;
    scan(c, [&](const Grid& g, std::uint64_t seed) {
      require_band(g, c.lambda);
      const auto f = draw(g, ball, seed);
      rep.add(g.n, seed, "interpolation", besov(f, s, c.p, c.r),
              std::pow(besov(f, c.sigma1, c.p, c.r), c.theta) * std::pow(besov(f, c.sigma2, c.p, c.r), 1.0 - c.theta));
    });
    rep.set_extra("sigma", s);
  } else {
    throw ConfigError("unknown embedding variant " + c.variant);
  }
  return rep;
}

}  // namespace nsp::ineq
