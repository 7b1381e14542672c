#pragma once

#include <filesystem>
#include <string>

#include "nsp/error.hpp"
#include "nsp/harness/config.hpp"
#include "nsp/norm_series.hpp"

namespace nsp::harness {

/// 0 ok, 2 configuration, 3 numerical guard, 4 I/O.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

int exit_code(FailureClass c);

struct RunResult {
  int exit_code = kExitOk;
  std::string failure_class;  // empty on success
  std::string message;
};

/// Runs the configured pipeline into `out` (manifest.json, config.toml,
/// norms.csv, report.json, plus per-kind extras). Library errors are caught
/// and mapped to exit codes; the manifest records the failure class.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out);

/// `t,name,value` rows in record order, shortest round-trip decimals.
std::string norms_csv(const NormSeries& series);
/// Writes through a temporary file and a rename; IoError names the path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace nsp::harness
