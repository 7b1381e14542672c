#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "nsp/decay/params.hpp"
#include "nsp/ineq/checks.hpp"
#include "nsp/solver/params.hpp"

namespace nsp::harness {

enum class Kind { linear_decay, simulate, ineq, partition_check };

const char* kind_name(Kind k);
/// Throws ConfigError for unknown names.
Kind parse_kind(const std::string& name);

struct GridBlock {
  int d = 2;
  int n = 64;
  double L = 6.283185307179586;
};

struct LinearDecayBlock {
  double radius = 1.0;  // velocity data |u0^| = 1 on |xi| <= radius, a0 = 0
  double t_min = 10.0;
  double t_max = 1000.0;
  int samples = 2001;
  double s = 0.0;
  double tolerance = 0.05;
  double rel_tol = 1e-10;
  bool contrast = true;   // repeat without the Poisson coupling
  bool semigroup = true;  // scan the (a~, omega) propagator bound
  double semigroup_c0 = 0.4;
  double semigroup_C = 3.0;
};

struct SimulateBlock {
  double amplitude = 1e-2;
  double support = 1.0;
  double horizon = 10.0;
  double cadence = 1.0;
  double dt = 0.25;
  bool linear_only = false;
  double smallness_threshold = 0.05;
  double divergence_factor = 10.0;
  double checkpoint_every = 0.0;  // 0: final state only
  bool track_decay = false;
};

struct IneqBlock {
  std::string check = "bernstein";
  ineq::InequalityCase cas;
  ineq::ConvolutionParams conv;
};

struct ExperimentConfig {
  Kind kind = Kind::partition_check;
  std::uint64_t seed = 1;
  std::string output = "out";
  GridBlock grid;
  solver::PhysicalParams physics;
  decay::DecayParams decay;
  double fit_t_min = 10.0;
  double fit_t_max = 1000.0;
  LinearDecayBlock linear;
  SimulateBlock simulate;
  IneqBlock ineq;

  /// Re-checks every block; throws ConfigError or RejectedCase.
  void validate() const;
};

/// Reads a TOML file. Unknown keys, wrong types and constraint violations
/// throw ConfigError naming the key (and line) or the violated constraint.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::string& source = "config");

/// Every field, defaults included, as TOML text that parse_config accepts.
std::string to_toml(const ExperimentConfig& c);
/// Same content as JSON (non-finite numbers become "inf" / "-inf").
std::string to_json(const ExperimentConfig& c);

}  // namespace nsp::harness
