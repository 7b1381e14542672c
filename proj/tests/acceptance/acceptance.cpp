// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nsp/decay/rates.hpp"
#include "nsp/error.hpp"
#include "nsp/harness/config.hpp"
#include "nsp/harness/run.hpp"
#include "nsp/ineq/checks.hpp"
#include "nsp/linear/propagator.hpp"
#include "nsp/linear/radial.hpp"
#include "nsp/linear/semigroup.hpp"
#include "nsp/lp/besov.hpp"
#include "nsp/solver/initial.hpp"
#include "nsp/solver/integrator.hpp"
#include "nsp/spectral/norms.hpp"
#include "nsp/spectral/operators.hpp"
#include "nsp/spectral/random.hpp"

using namespace nsp;
using spectral::Grid;
using spectral::SpectralField;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ":" << o.detail.str() << " (" << secs << " s)"
            << std::endl;
}

std::vector<double> log_times(double a, double b, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  return t;
}

struct Slopes {
  double u = 0.0, a = 0.0, secs = 0.0;
};

Slopes endpoint_slopes(int dim, bool poisson) {
  const auto times = log_times(10.0, 1000.0, 2001);
  linear::RadialOptions opt;
  opt.params.poisson = poisson;
  const auto start = std::chrono::steady_clock::now();
  const auto res = linear::radial_decay_quadrature(linear::RadialProfile::indicator_velocity(dim, 1.0), times, opt);
  Slopes s;
  s.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.u = decay::fit_decay_slope(res.series, "u", 10.0, 1000.0).slope;
  s.a = decay::fit_decay_slope(res.series, "a", 10.0, 1000.0).slope;
  return s;
}

linear::Mat2 rk4_exponential(double r, double t, bool poisson, double dt) {
  const linear::Mat2 m = linear::mode_matrix(r, poisson);
  const int steps = static_cast<int>(std::llround(t / dt));
  const double h = t / steps;
  linear::Mat2 x = linear::Mat2::identity();
  for (int s = 0; s < steps; ++s) {
    const auto k1 = m * x;
    const auto k2 = m * (x + (0.5 * h) * k1);
    const auto k3 = m * (x + (0.5 * h) * k2);
    const auto k4 = m * (x + h * k3);
    x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

double max_coeff_diff(const FluidState& x, const FluidState& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  for (std::size_t c = 0; c < x.u.size(); ++c)
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.u[c][i] - y.u[c][i]));
  return m;
}

double l2_error(const FluidState& x, const FluidState& y) {
  return std::hypot(spectral::spectral_l2_norm(x.a - y.a), spectral::spectral_l2_norm(x.u - y.u));
}

FluidState run_steps(FluidState s, double dt, double T) {
  const solver::Stepper st(s.grid(), dt, {});
  const long n = std::llround(T / dt);
  for (long k = 0; k < n; ++k) st.step(s);
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

template <class F>
bool rejected_with(F&& f, const std::string& text) {
  try {
    f();
  } catch (const RejectedCase& e) {
    return std::string(e.what()).find(text) != std::string::npos;
  }
  return false;
}

ineq::InequalityCase refinement_case(const std::string& variant) {
  ineq::InequalityCase c;
  c.name = variant;
  c.variant = variant;
  c.grids = {64, 128, 256};
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "nsp_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  criterion("linear-decay-d3-endpoint", [](Outcome& o) {
    const auto s = endpoint_slopes(3, true);
    o.detail << " slope_u=" << s.u << " slope_a=" << s.a << " quadrature_s=" << s.secs;
    o.require(std::abs(s.u + 0.75) <= 0.05, "slope_u = -0.75 +- 0.05");
    o.require(std::abs(s.a + 1.25) <= 0.05, "slope_a = -1.25 +- 0.05");
    o.require(s.secs < 60.0, "runtime < 1 min");
  });

  criterion("half-rate-gap", [](Outcome& o) {
    const auto on = endpoint_slopes(3, true);
    const auto off = endpoint_slopes(3, false);
    const double gap_on = on.a - on.u, gap_off = off.a - off.u;
    o.detail << " gap_poisson=" << gap_on << " gap_no_poisson=" << gap_off;
    o.require(std::abs(gap_on + 0.5) <= 0.05, "gap -0.50 +- 0.05 with poisson");
    o.require(std::abs(gap_off) <= 0.05, "gap 0.00 +- 0.05 without poisson");
  });

  criterion("linear-decay-d2", [](Outcome& o) {
    const auto s = endpoint_slopes(2, true);
    o.detail << " slope_u=" << s.u << " slope_a=" << s.a;
    o.require(std::abs(s.u + 0.5) <= 0.05, "slope_u = -0.50 +- 0.05");
    o.require(std::abs(s.a + 1.0) <= 0.05, "slope_a = -1.00 +- 0.05");
  });

  criterion("semigroup-bound", [](Outcome& o) {
    linear::SemigroupScanOptions opt;
    opt.r_max = 1.0;
    opt.t_max = 100.0;
    const auto b = linear::verify_semigroup_bound(0.4, 3.0, opt);
    o.detail << " c0=" << b.c0 << " C=" << b.C << " best_c0=" << b.best_c0;
    o.require(b.pass && b.C <= 3.0, "C <= 3 at c0 = 0.4");
  });

  criterion("propagator-rk4-oracle", [](Outcome& o) {
    const double rs[] = {0.01, 0.1, 0.5, 1.0, 2.0, 2.19737, linear::collision_radius(), 5.0, 10.0};
    double worst = 0.0;
    for (bool poisson : {true, false})
      for (double r : rs)
        for (double t : {0.1, 1.0, 10.0}) {
          const auto exact = linear::mode_exponential(r, t, poisson);
          const auto ref = rk4_exponential(r, t, poisson, 1e-4);
          worst = std::max(worst, (exact - ref).op_norm() / ref.op_norm());
        }
    o.detail << " max_rel_error=" << worst << " collision_radius=" << linear::collision_radius();
    o.require(worst < 1e-8, "relative error < 1e-8");
  });

  criterion("littlewood-paley-suite", [](Outcome& o) {
    double part = 0.0;
    for (const auto& g : {Grid(2, 64, 2 * pi), Grid(2, 256, 64 * pi), Grid(3, 32, 2 * pi)})
      part = std::max(part, lp::build_partition(g).partition_error());
    const Grid g(2, 64, 2 * pi);
    const auto p = lp::build_partition(g);
    double ortho = 0.0, recon = 0.0, lo = 1.0, hi = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto f = spectral::random_field(g, spectral::Support::ball(30.0), seed);
      const double l2 = spectral::lp_norm(f, 2.0);
      SpectralField sum(g);
      for (int j = p.j_min; j <= p.j_max; ++j) sum += lp::dyadic_block(f, j);
      recon = std::max(recon, spectral::spectral_l2_norm(sum - f) / spectral::spectral_l2_norm(f));
      const double ratio = lp::besov_norm(f, {0.0, 2.0, 2.0}) / l2;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      if (seed < 5)
        for (int j = p.j_min; j <= p.j_max; ++j)
          for (int k = p.j_min; k <= p.j_max; ++k)
            if (std::abs(j - k) >= 2)
              ortho = std::max(ortho, spectral::lp_norm(lp::dyadic_block(lp::dyadic_block(f, j), k), spectral::kInf) / l2);
    }
    o.detail << " partition_error=" << part << " orthogonality_defect=" << ortho << " reconstruction=" << recon
             << " B022_over_L2=[" << lo << ", " << hi << "]";
    o.require(part < 1e-12, "partition error < 1e-12");
    o.require(ortho < 1e-15, "block orthogonality at machine precision");
    o.require(recon < 1e-10, "reconstruction < 1e-10");
    o.require(lo >= 1.0 / std::sqrt(2.0) - 1e-12 && hi <= 1.0 + 1e-12, "ratio in [1/sqrt 2, 1]");
  });

  criterion("nonlinear-solver", [&](Outcome& o) {
    const Grid g(2, 32, 4 * pi);
    FluidState s = solver::random_initial_state(g, 0.1, 2.0, 23);
    spectral::dealias(s.a);
    spectral::dealias(s.u);
    const FluidState ref = run_steps(s, 0.1 / 8.0, 1.0);
    const double e1 = l2_error(run_steps(s, 0.1, 1.0), ref);
    const double e2 = l2_error(run_steps(s, 0.05, 1.0), ref);
    const double order_ratio = (e1 - e1 / 64.0) / (e2 - e1 / 64.0);

    const FluidState s0 = solver::random_initial_state(g, 0.1, 3.0, 41);
    solver::SimulationOptions opt;
    opt.horizon = 5.0;
    opt.cadence = 0.5;
    opt.dt = 0.1;
    opt.linear_only = true;
    double linear_gap = 0.0;
    opt.on_output = [&](const FluidState& x) {
      linear_gap = std::max(linear_gap, max_coeff_diff(x, linear::propagate_linear(s0, x.t, {})));
    };
    solver::simulate(s0, {}, opt);

    auto cfg = harness::parse_config(R"(kind = "simulate"
seed = 1
[grid]
d = 2
n = 256
L = 201.06192982974676
[simulate]
amplitude = 0.01
support = 1.0
horizon = 100.0
cadence = 1.0
dt = 0.25
track_decay = true
[decay]
s1 = 1.0
)");
    const auto res = harness::run_experiment(cfg, work / "solver_2d");
    o.require(res.exit_code == 0, "2D run completes: " + res.message);
    const auto rep = nlohmann::json::parse(slurp(work / "solver_2d" / "report.json"));
    const double drift = rep["max_mass_drift"].get<double>();
    double tracked = 0.0;
    for (const auto& [name, v] : rep["max_ratio_to_initial"].items()) tracked = std::max(tracked, v.get<double>());

    // Weighted high-frequency series: finite, and no new maximum in the last quarter.
    NormSeries series;
    {
      std::istringstream csv(slurp(work / "solver_2d" / "norms.csv"));
      std::string line;
      std::getline(csv, line);
      while (std::getline(csv, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        series.add(std::stod(line.substr(0, c1)), line.substr(c1 + 1, c2 - c1 - 1), std::stod(line.substr(c2 + 1)));
      }
    }
    bool high_bounded = true;
    int high_series = 0;
    for (const auto& name : series.names()) {
      if (name.rfind("high:", 0) != 0) continue;
      ++high_series;
      const auto [t, v] = series.series(name);
      double early = 0.0, late = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(v[i])) high_bounded = false;
        (t[i] <= 75.0 ? early : late) = std::max(t[i] <= 75.0 ? early : late, v[i]);
      }
      if (late > early) high_bounded = false;
      o.detail << " " << name << "_sup=" << early << "/" << late;
    }
    const auto Dp = series.series("D_p").second;
    o.detail << " order_ratio=" << order_ratio << " linear_only_gap=" << linear_gap << " mass_drift_T100=" << drift
             << " tracked_max_over_initial=" << tracked << " D_p(0)=" << Dp.front() << " D_p(T)=" << Dp.back();
    o.require(order_ratio >= 3.5 && order_ratio <= 4.5, "order-2 ratio in [3.5, 4.5]");
    o.require(linear_gap < 1e-10, "linear-only path within 1e-10");
    o.require(drift < 1e-8, "mass conserved to 1e-8 per 100 time units");
    o.require(tracked <= 2.0, "tracked norms <= 2x initial");
    o.require(high_series == 2 && high_bounded && std::isfinite(Dp.back()), "high-frequency weighted norms bounded");
  });

  criterion("inequality-lab", [](Outcome& o) {
    std::vector<std::pair<std::string, ineq::RatioReport>> reps;
    {
      auto c = refinement_case("bernstein");
      c.lambda = 16.0;
      c.b = spectral::kInf;
      c.trials = 100;
      reps.emplace_back("bernstein", ineq::check_bernstein(c));
      c = refinement_case("multiplier");
      c.block = 2;
      c.trials = 30;
      reps.emplace_back("multiplier", ineq::check_bernstein(c));
    }
    {
      auto c = refinement_case("algebra");
      c.lambda = 6.0;
      c.p = 4.0;
      reps.emplace_back("algebra", ineq::check_product_laws(c));
      c = refinement_case("bilinear");
      c.lambda = 6.0;
      reps.emplace_back("bilinear", ineq::check_product_laws(c));
      c = refinement_case("negative");
      c.length = 8 * pi;
      c.lambda = 2.0;
      c.block = 1;
      c.p1 = c.p2 = 2.0;
      reps.emplace_back("negative", ineq::check_product_laws(c));
    }
    {
      auto c = refinement_case("nonclassical");
      c.length = 8 * pi;
      c.lambda = 2.0;
      c.j0 = -2;
      c.p = 4.0;
      c.trials = 30;
      reps.emplace_back("nonclassical", ineq::check_nonclassical_product(c));
    }
    for (const char* F : {"rational", "pressure", "sin"}) {
      auto c = refinement_case(F);
      c.sigma = 1.0;
      c.trials = 50;
      reps.emplace_back(std::string("composition:") + F, ineq::check_composition(c));
    }
    {
      auto c = refinement_case("commutator");
      c.sigma = 1.0;
      c.p = c.p1 = 2.0;
      c.lambda = 6.0;
      reps.emplace_back("commutator", ineq::check_commutator(c));
    }
    for (double p : {2.0, 4.0, spectral::kInf}) {
      auto c = refinement_case("embedding");
      c.p = p;
      c.lambda = 12.0;
      c.trials = 100;
      reps.emplace_back("embedding:p=" + std::to_string(static_cast<int>(std::min(p, 99.0))),
                        ineq::check_embedding_interpolation(c));
    }
    {
      auto c = refinement_case("interpolation");
      c.sigma1 = 0.0;
      c.sigma2 = 1.0;
      c.p = 3.0;
      c.trials = 50;
      reps.emplace_back("interpolation", ineq::check_embedding_interpolation(c));
    }
    double worst = 0.0;
    std::string worst_case;
    for (const auto& [name, rep] : reps)
      for (const auto& tag : rep.tags()) {
        const double gr = rep.refinement_growth(tag);
        if (gr >= worst) {
          worst = gr;
          worst_case = name + "/" + tag;
        }
      }
    o.detail << " cases=" << reps.size() << " max_growth=" << worst << " (" << worst_case << ")";
    o.require(worst < 0.1, "max ratio growth < 10% over 64 -> 128 -> 256");

    // Equality and zero cases.
    const Grid g(2, 64, 2 * pi);
    double exact_defect = 0.0;
    const auto f = ineq::tone(g, {3, 4, 0});
    exact_defect = std::max(exact_defect, std::abs(spectral::lp_norm(ineq::derivatives(f, 1), 2.0) /
                                                       (5.0 * spectral::lp_norm(f, 2.0)) - 1.0));
    {
      const Grid g8(2, 64, 8 * pi);
      const auto F = spectral::random_field(g8, spectral::Support::ball(2.0), 3);
      exact_defect = std::max(exact_defect, ineq::low_negative_norm(ineq::multiply(F, SpectralField(g8)), 0.0, -2));
    }
    {
      auto c = refinement_case("identity");
      c.grids = {64};
      c.sigma = 1.0;
      c.trials = 5;
      const auto rep = ineq::check_composition(c);
      exact_defect = std::max({exact_defect, std::abs(rep.max_ratio() - 1.0), std::abs(rep.min_ratio() - 1.0)});
    }
    {
      const auto a = spectral::random_field(g, spectral::Support::ball(6.0), 11);
      const auto zero = spectral::zero_vector(g);
      auto constant = zero;
      constant[0][0] = 0.7;
      constant[1][0] = -1.3;
      const double scale = spectral::lp_norm(spectral::gradient(a), 2.0);
      for (int j = 0; j <= 3; ++j)
        for (int ell = 0; ell < 2; ++ell) {
          exact_defect = std::max(exact_defect, spectral::lp_norm(ineq::commutator(zero, a, j, ell), 2.0));
          exact_defect =
              std::max(exact_defect, spectral::lp_norm(ineq::commutator(constant, a, j, ell), 2.0) / scale);
        }
    }
    {
      const auto t = ineq::tone(Grid(2, 32, 2 * pi), {1, 1, 0});
      for (double p : {2.0, 3.0}) {
        const double one = lp::besov_norm(t, {0.0, p, 1.0});
        const double inf = lp::besov_norm(t, {0.0, p, spectral::kInf});
        exact_defect = std::max(exact_defect, std::abs(one - inf) / one);
      }
    }
    for (double t : {0.5, 1.0, 10.0, 1000.0})
      exact_defect = std::max(exact_defect, std::abs(ineq::convolution_integral({0.0, 2.0, 0.0, {}}, t) - std::atan(t)));
    o.detail << " equality_zero_defect=" << exact_defect;
    o.require(exact_defect < 1e-10, "equality and zero cases exact to 1e-10");

    // Rejections name the violated hypothesis.
    int rejected = 0, expected = 0;
    auto reject = [&](auto&& fn, const std::string& text) {
      ++expected;
      if (rejected_with(fn, text)) ++rejected;
    };
    {
      auto c = refinement_case("bernstein");
      c.a = 4.0;
      c.b = 2.0;
      reject([&] { ineq::check_bernstein(c); }, "a <= b");
      c = refinement_case("bilinear");
      c.sigma1 = 0.2;
      reject([&] { ineq::check_product_laws(c); }, "sigma1 >= sigma2");
      c = refinement_case("algebra");
      c.sigma = 0.0;
      reject([&] { ineq::check_product_laws(c); }, "sigma > 0");
      c = refinement_case("nonclassical");
      c.p = 5.0;
      reject([&] { ineq::check_nonclassical_product(c); }, "2 <= p <= 4");
      c = refinement_case("shift");
      reject([&] { ineq::check_composition(c); }, "F(0)=0 violated");
      c = refinement_case("commutator");
      c.sigma = 2.5;
      reject([&] { ineq::check_commutator(c); }, "1 + min(d/p, d/p1)");
      reject([] { ineq::check_time_convolution({1.0, 1.0, 0.0}); }, "sigma2 > 1");
    }
    o.detail << " rejections=" << rejected << "/" << expected;
    o.require(rejected == expected, "every hypothesis violation rejected");

    // Time convolution at (1, 2, 0).
    const auto conv = ineq::check_time_convolution({1.0, 2.0, 0.0, {1.0, 10.0, 100.0, 1000.0}});
    const double sup = conv.extra("sup_ratio");
    const auto tail = ineq::check_time_convolution({1.0, 2.0, 0.0, {100.0, 1e3, 1e4, 1e5}});
    const double spread = tail.max_ratio() / tail.min_ratio() - 1.0;
    o.detail << " conv_sup=" << sup << " conv_tail_spread=" << spread << " conv_ratio_1e5=" << tail.trials().back().ratio;
    o.require(std::isfinite(sup) && sup < 5.0, "convolution sup finite (< 5)");
    o.require(spread < 0.1, "convolution ratio flat over t >= 100");
  });

  criterion("determinism", [&](Outcome& o) {
    auto cfg = harness::parse_config(R"(kind = "simulate"
seed = 7
[grid]
d = 2
n = 64
L = 50.26548245743669
[simulate]
amplitude = 0.01
horizon = 5.0
cadence = 0.5
dt = 0.25
track_decay = true
[decay]
s1 = 0.5
)");
    const auto r1 = harness::run_experiment(cfg, work / "det_1");
    const auto r2 = harness::run_experiment(cfg, work / "det_2");
    const auto a = slurp(work / "det_1" / "norms.csv"), b = slurp(work / "det_2" / "norms.csv");
    o.detail << " bytes=" << a.size() << " identical=" << (a == b ? "yes" : "no");
    o.require(r1.exit_code == 0 && r2.exit_code == 0, "both runs complete");
    o.require(a.size() > 100 && a == b, "byte-identical norms.csv");
  });

  std::cout << (failures == 0 ? "ALL PRIMARY CRITERIA PASS" : std::to_string(failures) + " PRIMARY CRITERIA FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
