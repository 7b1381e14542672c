#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "nsp/harness/config.hpp"
#include "nsp/harness/run.hpp"

namespace {

int fail(int code, const std::string& cls, const std::string& message) {
  std::cerr << nlohmann::ordered_json{{"status", "failed"}, {"failure_class", cls}, {"message", message}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nsp::harness;
  CLI::App app{"Decay laboratory: linear decay quadrature, nonlinear simulation, inequality scans"};
  std::string kind, config_path, out;
  std::optional<std::uint64_t> seed;
  app.add_option("kind", kind, "linear-decay | simulate | ineq | partition-check")
      ->required()
      ->check(CLI::IsMember({"linear-decay", "simulate", "ineq", "partition-check"}));
  app.add_option("--config", config_path, "TOML experiment file")->required();
  app.add_option("--out", out, "output directory (default: the config's output key)");
  app.add_option("--seed", seed, "master seed overriding the config");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    if (cfg.kind != parse_kind(kind))
      throw nsp::ConfigError(std::string("config kind ") + kind_name(cfg.kind) + " does not match command " + kind);
    if (seed) {
      cfg.seed = *seed;
      cfg.ineq.cas.seed = *seed;
    }
    if (!out.empty()) cfg.output = out;
  } catch (const nsp::Error& e) {
    return fail(exit_code(e.failure_class()), nsp::failure_name(e.failure_class()), e.what());
  }

  const auto res = run_experiment(cfg, cfg.output);
  if (res.exit_code != kExitOk) return fail(res.exit_code, res.failure_class, res.message);
  std::cout << nlohmann::ordered_json{{"status", "ok"}, {"kind", kind}, {"out", cfg.output}}.dump() << "\n";
  return kExitOk;
}
