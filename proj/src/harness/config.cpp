#include "nsp/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <toml.hpp>

#include "nsp/error.hpp"

namespace nsp::harness {

namespace {

std::string where(const toml::node& n) {
  const auto& src = n.source();
  return src.begin.line > 0 ? " (line " + std::to_string(src.begin.line) + ")" : "";
}

/// Typed reads from one TOML table that remember which keys were consumed.
class Section {
 public:
  Section(const toml::table* t, std::string prefix) : t_(t), prefix_(std::move(prefix)) {}

  bool present() const { return t_ != nullptr; }

  const toml::node* node(const std::string& key) {
    used_.insert(key);
    return t_ ? t_->get(key) : nullptr;
  }

  double number(const std::string& key, double def) {
    const auto* n = node(key);
    if (!n) return def;
    if (n->is_integer()) return static_cast<double>(n->as_integer()->get());
    if (n->is_floating_point()) return n->as_floating_point()->get();
    throw ConfigError("key " + full(key) + where(*n) + ": expected a number");
  }

  std::int64_t integer(const std::string& key, std::int64_t def) {
    const auto* n = node(key);
    if (!n) return def;
    if (!n->is_integer()) throw ConfigError("key " + full(key) + where(*n) + ": expected an integer");
    return n->as_integer()->get();
  }

  bool boolean(const std::string& key, bool def) {
    const auto* n = node(key);
    if (!n) return def;
    if (!n->is_boolean()) throw ConfigError("key " + full(key) + where(*n) + ": expected true or false");
    return n->as_boolean()->get();
  }

  std::string string(const std::string& key, const std::string& def) {
    const auto* n = node(key);
    if (!n) return def;
    if (!n->is_string()) throw ConfigError("key " + full(key) + where(*n) + ": expected a string");
    return n->as_string()->get();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> def) {
    const auto* n = node(key);
    if (!n) return def;
    const auto* arr = n->as_array();
    if (!arr) throw ConfigError("key " + full(key) + where(*n) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : *arr) {
      if (e.is_integer()) out.push_back(static_cast<double>(e.as_integer()->get()));
      else if (e.is_floating_point()) out.push_back(e.as_floating_point()->get());
      else throw ConfigError("key " + full(key) + where(e) + ": expected an array of numbers");
    }
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> def) {
    const auto* n = node(key);
    if (!n) return def;
    const auto* arr = n->as_array();
    if (!arr) throw ConfigError("key " + full(key) + where(*n) + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& e : *arr) {
      if (!e.is_integer()) throw ConfigError("key " + full(key) + where(e) + ": expected an array of integers");
      out.push_back(static_cast<int>(e.as_integer()->get()));
    }
    return out;
  }

  void reject_unknown() const {
    if (!t_) return;
    for (const auto& [k, v] : *t_)
      if (!used_.count(std::string(k.str())))
        throw ConfigError("unknown key " + full(std::string(k.str())) + where(v));
  }

 private:
  std::string full(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  const toml::table* t_;
  std::string prefix_;
  std::set<std::string> used_;
};

const toml::table* subtable(const toml::table& root, const char* name) {
  const auto* n = root.get(name);
  if (!n) return nullptr;
  if (!n->is_table()) throw ConfigError(std::string("key ") + name + where(*n) + ": expected a table");
  return n->as_table();
}

ExperimentConfig from_table(const toml::table& root) {
  ExperimentConfig c;
  Section top(&root, "");
  c.kind = parse_kind(top.string("kind", kind_name(c.kind)));
  const auto seed = top.integer("seed", 1);
  if (seed < 0) throw ConfigError("seed must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.output = top.string("output", c.output);
  for (const char* t : {"grid", "physics", "decay", "linear", "simulate", "ineq"}) top.node(t);
  top.reject_unknown();

  Section g(subtable(root, "grid"), "grid");
  c.grid.d = static_cast<int>(g.integer("d", c.grid.d));
  c.grid.n = static_cast<int>(g.integer("n", c.grid.n));
  c.grid.L = g.number("L", c.grid.L);
  g.reject_unknown();

  Section ph(subtable(root, "physics"), "physics");
  auto& P = c.physics;
  P.mu_inf = ph.number("mu_inf", P.mu_inf);
  P.lambda_inf = ph.number("lambda_inf", P.lambda_inf);
  P.gamma = ph.number("gamma", P.gamma);
  P.poisson = ph.boolean("poisson", P.poisson);
  const auto visc = ph.string("viscosity", "constant");
  if (visc == "constant") P.viscosity = solver::ViscosityModel::constant;
  else if (visc == "power_law") P.viscosity = solver::ViscosityModel::power_law;
  else throw ConfigError("key physics.viscosity: expected \"constant\" or \"power_law\"");
  P.beta = ph.number("beta", P.beta);
  ph.reject_unknown();

  Section dc(subtable(root, "decay"), "decay");
  auto& D = c.decay;
  D.d = c.grid.d;
  D.p = dc.number("p", 2.0);
  D.s1 = dc.number("s1", D.s0());
  D.epsilon = dc.number("epsilon", D.epsilon);
  D.j0 = static_cast<int>(dc.integer("j0", D.j0));
  D.s_samples = dc.numbers("s_samples", {});
  const auto window = dc.numbers("fit_window", {c.fit_t_min, c.fit_t_max});
  if (window.size() != 2) throw ConfigError("key decay.fit_window: expected [t_min, t_max]");
  c.fit_t_min = window[0];
  c.fit_t_max = window[1];
  dc.reject_unknown();

  Section li(subtable(root, "linear"), "linear");
  auto& L = c.linear;
  L.radius = li.number("radius", L.radius);
  L.t_min = li.number("t_min", L.t_min);
  L.t_max = li.number("t_max", L.t_max);
  L.samples = static_cast<int>(li.integer("samples", L.samples));
  L.s = li.number("s", L.s);
  L.tolerance = li.number("tolerance", L.tolerance);
  L.rel_tol = li.number("rel_tol", L.rel_tol);
  L.contrast = li.boolean("contrast", L.contrast);
  L.semigroup = li.boolean("semigroup", L.semigroup);
  L.semigroup_c0 = li.number("semigroup_c0", L.semigroup_c0);
  L.semigroup_C = li.number("semigroup_C", L.semigroup_C);
  li.reject_unknown();

  Section si(subtable(root, "simulate"), "simulate");
  auto& S = c.simulate;
  S.amplitude = si.number("amplitude", S.amplitude);
  S.support = si.number("support", S.support);
  S.horizon = si.number("horizon", S.horizon);
  S.cadence = si.number("cadence", S.cadence);
  S.dt = si.number("dt", S.dt);
  S.linear_only = si.boolean("linear_only", S.linear_only);
  S.smallness_threshold = si.number("smallness_threshold", S.smallness_threshold);
  S.divergence_factor = si.number("divergence_factor", S.divergence_factor);
  S.checkpoint_every = si.number("checkpoint_every", S.checkpoint_every);
  S.track_decay = si.boolean("track_decay", S.track_decay);
  si.reject_unknown();

  Section in(subtable(root, "ineq"), "ineq");
  auto& I = c.ineq;
  auto& k = I.cas;
  I.check = in.string("check", I.check);
  k.name = in.string("name", I.check);
  k.variant = in.string("variant", k.variant);
  k.dim = c.grid.d;
  k.length = c.grid.L;
  k.grids = in.integers("grids", {c.grid.n});
  k.trials = static_cast<int>(in.integer("trials", k.trials));
  k.seed = c.seed;
  k.sigma = in.number("sigma", k.sigma);
  k.sigma1 = in.number("sigma1", k.sigma1);
  k.sigma2 = in.number("sigma2", k.sigma2);
  k.p = in.number("p", k.p);
  k.p1 = in.number("p1", k.p1);
  k.p2 = in.number("p2", k.p2);
  k.r = in.number("r", k.r);
  k.a = in.number("a", k.a);
  k.b = in.number("b", k.b);
  k.k = static_cast<int>(in.integer("k", k.k));
  k.lambda = in.number("lambda", k.lambda);
  k.block = static_cast<int>(in.integer("block", k.block));
  k.j0 = static_cast<int>(in.integer("j0", k.j0));
  k.n0_min = static_cast<int>(in.integer("n0_min", k.n0_min));
  k.n0_max = static_cast<int>(in.integer("n0_max", k.n0_max));
  k.amplitude = in.number("amplitude", k.amplitude);
  k.theta = in.number("theta", k.theta);
  k.gamma = c.physics.gamma;
  I.conv.sigma1 = k.sigma1;
  I.conv.sigma2 = k.sigma2;
  I.conv.theta = k.theta;
  I.conv.times = in.numbers("times", I.conv.times);
  in.reject_unknown();

  c.validate();
  return c;
}

toml::table to_table(const ExperimentConfig& c) {
  auto arr = [](const auto& v) {
    toml::array a;
    for (const auto& x : v) a.push_back(x);
    return a;
  };
  const auto& k = c.ineq.cas;
  return toml::table{
      {"kind", kind_name(c.kind)},
      {"seed", static_cast<std::int64_t>(c.seed)},
      {"output", c.output},
      {"grid", toml::table{{"d", c.grid.d}, {"n", c.grid.n}, {"L", c.grid.L}}},
      {"physics", toml::table{{"mu_inf", c.physics.mu_inf},
                              {"lambda_inf", c.physics.lambda_inf},
                              {"gamma", c.physics.gamma},
                              {"poisson", c.physics.poisson},
                              {"viscosity", c.physics.viscosity == solver::ViscosityModel::constant ? "constant"
                                                                                                   : "power_law"},
                              {"beta", c.physics.beta}}},
      {"decay", toml::table{{"p", c.decay.p},
                            {"s1", c.decay.s1},
                            {"epsilon", c.decay.epsilon},
                            {"j0", c.decay.j0},
                            {"s_samples", arr(c.decay.sample_grid())},
                            {"fit_window", arr(std::vector<double>{c.fit_t_min, c.fit_t_max})}}},
      {"linear", toml::table{{"radius", c.linear.radius},
                             {"t_min", c.linear.t_min},
                             {"t_max", c.linear.t_max},
                             {"samples", c.linear.samples},
                             {"s", c.linear.s},
                             {"tolerance", c.linear.tolerance},
                             {"rel_tol", c.linear.rel_tol},
                             {"contrast", c.linear.contrast},
                             {"semigroup", c.linear.semigroup},
                             {"semigroup_c0", c.linear.semigroup_c0},
                             {"semigroup_C", c.linear.semigroup_C}}},
      {"simulate", toml::table{{"amplitude", c.simulate.amplitude},
                               {"support", c.simulate.support},
                               {"horizon", c.simulate.horizon},
                               {"cadence", c.simulate.cadence},
                               {"dt", c.simulate.dt},
                               {"linear_only", c.simulate.linear_only},
                               {"smallness_threshold", c.simulate.smallness_threshold},
                               {"divergence_factor", c.simulate.divergence_factor},
                               {"checkpoint_every", c.simulate.checkpoint_every},
                               {"track_decay", c.simulate.track_decay}}},
      {"ineq", toml::table{{"check", c.ineq.check},
                           {"name", k.name},
                           {"variant", k.variant},
                           {"grids", arr(k.grids)},
                           {"trials", k.trials},
                           {"sigma", k.sigma},
                           {"sigma1", k.sigma1},
                           {"sigma2", k.sigma2},
                           {"p", k.p},
                           {"p1", k.p1},
                           {"p2", k.p2},
                           {"r", k.r},
                           {"a", k.a},
                           {"b", k.b},
                           {"k", k.k},
                           {"lambda", k.lambda},
                           {"block", k.block},
                           {"j0", k.j0},
                           {"n0_min", k.n0_min},
                           {"n0_max", k.n0_max},
                           {"amplitude", k.amplitude},
                           {"theta", k.theta},
                           {"times", arr(c.ineq.conv.times)}}},
  };
}

nlohmann::ordered_json to_json_node(const toml::node& n) {
  if (const auto* t = n.as_table()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : *t) j[std::string(k.str())] = to_json_node(v);
    return j;
  }
  if (const auto* a = n.as_array()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& v : *a) j.push_back(to_json_node(v));
    return j;
  }
  if (n.is_integer()) return n.as_integer()->get();
  if (n.is_boolean()) return n.as_boolean()->get();
  if (n.is_string()) return n.as_string()->get();
  const double x = n.as_floating_point()->get();
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::linear_decay: return "linear-decay";
    case Kind::simulate: return "simulate";
    case Kind::ineq: return "ineq";
    case Kind::partition_check: return "partition-check";
  }
  return "?";
}

Kind parse_kind(const std::string& name) {
  for (Kind k : {Kind::linear_decay, Kind::simulate, Kind::ineq, Kind::partition_check})
    if (name == kind_name(k)) return k;
  throw ConfigError("unknown kind \"" + name + "\" (linear-decay, simulate, ineq, partition-check)");
}

void ExperimentConfig::validate() const {
  if (grid.d != 2 && grid.d != 3) throw ConfigError("grid.d must be 2 or 3");
  if (grid.n < 8 || grid.n % 2 != 0) throw ConfigError("grid.n must be even and at least 8");
  if (!(grid.L > 0.0)) throw ConfigError("grid.L must be positive");
  physics.validate();
  decay.validate();
  if (decay.d != grid.d) throw ConfigError("decay dimension must match grid.d");
  if (!(fit_t_min > 0.0 && fit_t_min < fit_t_max)) throw ConfigError("decay.fit_window needs 0 < t_min < t_max");
  if (!(linear.radius > 0.0)) throw ConfigError("linear.radius must be positive");
  if (!(linear.t_min > 0.0 && linear.t_min < linear.t_max)) throw ConfigError("linear needs 0 < t_min < t_max");
  if (linear.samples < 10) throw ConfigError("linear.samples must be at least 10");
  if (!(linear.tolerance > 0.0)) throw ConfigError("linear.tolerance must be positive");
  if (!(simulate.amplitude > 0.0 && simulate.support > 0.0)) throw ConfigError("simulate amplitude and support must be positive");
  if (!(simulate.horizon > 0.0 && simulate.cadence > 0.0 && simulate.dt > 0.0))
    throw ConfigError("simulate horizon, cadence and dt must be positive");
  if (simulate.checkpoint_every < 0.0) throw ConfigError("simulate.checkpoint_every must be nonnegative");
  ineq.cas.validate();
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  try {
    return from_table(toml::parse(text, source));
  } catch (const toml::parse_error& e) {
    const auto& b = e.source().begin;
    throw ConfigError(source + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": " +
                      std::string(e.description()));
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string to_toml(const ExperimentConfig& c) {
  std::ostringstream ss;
  ss << to_table(c) << "\n";
  return ss.str();
}

std::string to_json(const ExperimentConfig& c) { return to_json_node(to_table(c)).dump(2); }

}  // namespace nsp::harness
