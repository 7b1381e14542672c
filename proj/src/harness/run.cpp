#include "nsp/harness/run.hpp"

#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "nsp/decay/functionals.hpp"
#include "nsp/decay/rates.hpp"
#include "nsp/format.hpp"
#include "nsp/linear/radial.hpp"
#include "nsp/linear/semigroup.hpp"
#include "nsp/lp/besov.hpp"
#include "nsp/lp/partition.hpp"
#include "nsp/solver/checkpoint.hpp"
#include "nsp/solver/initial.hpp"
#include "nsp/solver/integrator.hpp"
#include "nsp/spectral/random.hpp"

namespace nsp::harness {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

json json_number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

struct Outputs {
  NormSeries norms;
  json report = json::object();
  std::vector<std::string> extra_files;
};

json rate_rows(const decay::RateReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"quantity", row.quantity},
                    {"predicted", row.predicted},
                    {"fitted", row.fitted},
                    {"stderr", row.std_error},
                    {"tolerance", row.tolerance},
                    {"pass", row.pass}});
  return rows;
}

void run_partition_check(const ExperimentConfig& c, Outputs& o) {
  const spectral::Grid g(c.grid.d, c.grid.n, c.grid.L);
  const auto part = lp::build_partition(g);
  const auto& lat = spectral::lattice(g);
  const auto f = spectral::random_field(g, spectral::Support::ball(lat.max_radius()), c.seed);

  spectral::SpectralField sum(g);
  std::vector<spectral::SpectralField> blocks;
  for (int j = part.j_min; j <= part.j_max; ++j) {
    blocks.push_back(lp::dyadic_block(f, j));
    sum += blocks.back();
    o.norms.add(0.0, "block:j=" + std::to_string(j), spectral::spectral_l2_norm(blocks.back()));
  }
  const double norm = spectral::spectral_l2_norm(f);
  const double recon = spectral::spectral_l2_norm(sum - f) / norm;
  // Blocks two or more apart have disjoint spectra.
  double ortho = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t k = i + 2; k < blocks.size(); ++k) {
      double dot = 0.0;
      for (std::size_t m = 0; m < lat.size(); ++m)
        dot += lat.weight[m] * std::real(blocks[i][m] * std::conj(blocks[k][m]));
      ortho = std::max(ortho, std::abs(dot) * g.volume() / (norm * norm));
    }
  const double err = part.partition_error();
  o.report = {{"kind", "partition-check"},
              {"j_min", part.j_min},
              {"j_max", part.j_max},
              {"partition_error", err},
              {"reconstruction_error", recon},
              {"orthogonality_defect", ortho},
              {"pass", err < 1e-12 && recon < 1e-10 && ortho < 1e-12}};
}

void run_linear_decay(const ExperimentConfig& c, Outputs& o) {
  const auto& L = c.linear;
  std::vector<double> times(static_cast<std::size_t>(L.samples));
  for (int i = 0; i < L.samples; ++i)
    times[i] = L.t_min * std::pow(L.t_max / L.t_min, static_cast<double>(i) / (L.samples - 1));
  const auto profile = linear::RadialProfile::indicator_velocity(c.grid.d, L.radius);

  auto one = [&](bool poisson, const std::string& suffix) {
    linear::RadialOptions opt;
    opt.s = L.s;
    opt.rel_tol = L.rel_tol;
    opt.params = {c.physics.mu_inf, poisson};
    const auto res = linear::radial_decay_quadrature(profile, times, opt);
    const std::string an = L.s == 0.0 ? "a" : "a:s=" + format_double(L.s);
    const std::string un = L.s == 0.0 ? "u" : "u:s=" + format_double(L.s);
    for (const auto& r : res.series.records()) o.norms.add(r.t, r.name + suffix, r.value);
    const auto fa = decay::fit_decay_slope(res.series, an, c.fit_t_min, c.fit_t_max);
    const auto fu = decay::fit_decay_slope(res.series, un, c.fit_t_min, c.fit_t_max);
    const auto rep = decay::rate_report(c.decay, L.s, poisson, fa, fu, L.tolerance);
    return std::pair{rep, json{{"poisson", poisson},
                               {"slope_a", fa.slope},
                               {"slope_u", fu.slope},
                               {"gap", fa.slope - fu.slope},
                               {"r_cut", res.r_cut},
                               {"tail_bound", res.tail_bound},
                               {"rows", rate_rows(rep)},
                               {"pass", rep.all_pass()}}};
  };

  bool pass = true;
  auto [main_rep, main_json] = one(c.physics.poisson, "");
  pass = pass && main_rep.all_pass();
  o.report = {{"kind", "linear-decay"},
              {"d", c.grid.d},
              {"s1", c.decay.s1},
              {"s", L.s},
              {"fit_window", {c.fit_t_min, c.fit_t_max}},
              {"target_a", decay::density_exponent(c.decay, L.s)},
              {"target_u", decay::velocity_exponent(c.decay, L.s)},
              {"main", main_json}};
  std::string csv = main_rep.to_csv();
  if (L.contrast) {
    auto [rep, js] = one(!c.physics.poisson, c.physics.poisson ? ":nopoisson" : ":poisson");
    pass = pass && rep.all_pass();
    o.report["contrast"] = js;
  }
  if (L.semigroup) {
    linear::SemigroupScanOptions so;
    so.poisson = c.physics.poisson;
    const auto b = linear::verify_semigroup_bound(L.semigroup_c0, L.semigroup_C, so);
    o.report["semigroup"] = {{"c0", b.c0}, {"C", b.C}, {"C_limit", b.C_limit}, {"best_c0", b.best_c0}, {"pass", b.pass}};
    pass = pass && b.pass;
  }
  o.report["pass"] = pass;
}

void run_simulate(const ExperimentConfig& c, const fs::path& out, Outputs& o) {
  const auto& S = c.simulate;
  const spectral::Grid g(c.grid.d, c.grid.n, c.grid.L);
  const auto init = solver::random_initial_state(g, S.amplitude, S.support, c.seed);

  solver::SimulationOptions opt;
  opt.horizon = S.horizon;
  opt.cadence = S.cadence;
  opt.dt = S.dt;
  opt.linear_only = S.linear_only;
  opt.smallness_threshold = S.smallness_threshold;
  opt.smallness_p = c.decay.p;
  opt.divergence_factor = S.divergence_factor;
  opt.recorder = solver::solution_norm_recorder(c.decay.j0, c.decay.p);

  std::optional<decay::BlockBundle> bundle;
  if (S.track_decay) bundle.emplace(g, c.decay);
  std::vector<std::string> checkpoints;
  const fs::path cp_dir = out / "checkpoints";
  int index = 0;
  double mass_drift = 0.0;
  opt.on_output = [&](const FluidState& s) {
    mass_drift = std::max(mass_drift, std::abs(s.a.mean()));
    if (bundle) bundle->add(s);
    if (S.checkpoint_every > 0.0) {
      const double k = s.t / S.checkpoint_every;
      if (std::abs(k - std::round(k)) < 1e-9) {
        fs::create_directories(cp_dir);
        char name[32];
        std::snprintf(name, sizeof name, "state_%04d.bin", index++);
        solver::write_checkpoint(cp_dir / name, s, c.physics);
        checkpoints.push_back(std::string("checkpoints/") + name);
      }
    }
  };
  const auto res = solver::simulate(init, c.physics, opt);
  fs::create_directories(cp_dir);
  solver::write_checkpoint(cp_dir / "final.bin", res.final_state, c.physics);
  checkpoints.push_back("checkpoints/final.bin");

  o.norms = res.series;
  json ratios = json::object();
  for (const auto& name : res.series.names()) {
    const auto v = res.series.series(name).second;
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    ratios[name] = v.front() > 0.0 ? json_number(m / v.front()) : json(nullptr);
  }
  if (bundle) {
    const auto D = decay::functional_D(*bundle);
    o.norms.append(D);
    const auto W = decay::weighted_norm_series(*bundle, 0.0);
    for (const auto& r : W.records())
      if (r.name.rfind("high:", 0) == 0) o.norms.add(r.t, r.name, r.value);
  }
  o.report = {{"kind", "simulate"},
              {"steps", res.steps},
              {"dt", res.dt},
              {"final_time", res.final_state.t},
              {"smallness", res.smallness},
              {"small", res.small},
              {"torus_horizon_ok", res.torus_horizon_ok},
              {"mean_a_final", std::abs(res.final_state.a.mean())},
              {"max_mass_drift", mass_drift},
              {"max_ratio_to_initial", ratios},
              {"checkpoints", checkpoints}};
  o.extra_files = checkpoints;
}

void run_ineq(const ExperimentConfig& c, const fs::path& out, Outputs& o) {
  const auto& I = c.ineq;
  ineq::RatioReport rep;
  if (I.check == "bernstein") rep = ineq::check_bernstein(I.cas);
  else if (I.check == "product") rep = ineq::check_product_laws(I.cas);
  else if (I.check == "nonclassical") rep = ineq::check_nonclassical_product(I.cas);
  else if (I.check == "composition") rep = ineq::check_composition(I.cas);
  else if (I.check == "commutator") rep = ineq::check_commutator(I.cas);
  else if (I.check == "embedding") rep = ineq::check_embedding_interpolation(I.cas);
  else if (I.check == "convolution") rep = ineq::check_time_convolution(I.conv);
  else
    throw ConfigError("unknown ineq.check \"" + I.check +
                      "\" (bernstein, product, nonclassical, composition, commutator, embedding, convolution)");
  write_file_atomic(out / "ratios.csv", rep.to_csv());
  o.extra_files.push_back("ratios.csv");
  o.report = json::parse(rep.summary_json());
  o.report["check"] = I.check;
  o.report["max_ratio"] = rep.max_ratio();
  o.report["refinement_growth"] = rep.refinement_growth();
}

}  // namespace

int exit_code(FailureClass c) {
  switch (c) {
    case FailureClass::config:
    case FailureClass::rejected:
      return kExitConfig;
    case FailureClass::io:
      return kExitIo;
    default:
      return kExitNumeric;
  }
}

std::string norms_csv(const NormSeries& series) {
  std::string out = "t,name,value\n";
  for (const auto& r : series.records()) out += format_double(r.t) + ',' + r.name + ',' + format_double(r.value) + '\n';
  return out;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

RunResult run_experiment(const ExperimentConfig& config, const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  Outputs o;
  json manifest = {{"tool", "nsp-decay-lab"},
                   {"version", kVersion},
                   {"kind", kind_name(config.kind)},
                   {"seed", config.seed},
                   {"output", out.string()},
                   {"config_file", "config.toml"},
                   {"config", json::parse(to_json(config))},
                   {"versions", {{"fftw", std::string(fftw_version)}, {"compiler", __VERSION__}, {"cxx_standard", __cplusplus}}}};
  try {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
    config.validate();
    write_file_atomic(out / "config.toml", to_toml(config));
    switch (config.kind) {
      case Kind::partition_check: run_partition_check(config, o); break;
      case Kind::linear_decay: run_linear_decay(config, o); break;
      case Kind::simulate: run_simulate(config, out, o); break;
      case Kind::ineq: run_ineq(config, out, o); break;
    }
    write_file_atomic(out / "norms.csv", norms_csv(o.norms));
    write_file_atomic(out / "report.json", o.report.dump(2) + "\n");
  } catch (const Error& e) {
    result = {exit_code(e.failure_class()), failure_name(e.failure_class()), e.what()};
  } catch (const fs::filesystem_error& e) {
    result = {kExitIo, failure_name(FailureClass::io), e.what()};
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["wall_time_s"] = wall;
  manifest["status"] = result.exit_code == kExitOk ? "ok" : "failed";
  manifest["exit_code"] = result.exit_code;
  if (result.exit_code != kExitOk) {
    manifest["failure_class"] = result.failure_class;
    manifest["message"] = result.message;
  }
  json files = {"config.toml", "norms.csv", "report.json"};
  for (const auto& f : o.extra_files) files.push_back(f);
  manifest["outputs"] = result.exit_code == kExitOk ? files : json::array();
  try {
    write_file_atomic(out / "manifest.json", manifest.dump(2) + "\n");
  } catch (const IoError& e) {
    if (result.exit_code == kExitOk) result = {kExitIo, failure_name(FailureClass::io), e.what()};
  }
  return result;
}

}  // namespace nsp::harness
