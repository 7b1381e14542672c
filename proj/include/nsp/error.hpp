#pragma once

#include <stdexcept>
#include <string>

namespace nsp {

/// Failure classes surfaced by the library. The CLI maps each class to a
/// stable exit code and a machine-readable name.
enum class FailureClass {
  structural,  // mismatched grids, missing constituents
  domain,      // argument outside an operation's domain
  config,      // invalid configuration
  vacuum,      // 1 + a <= 0 somewhere
  cfl,         // step size exceeds the stability limit
  divergence,  // tracked norm blew past its guard
  rejected,    // inequality case violates its hypotheses
  io,
};

const char* failure_name(FailureClass c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(FailureClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}

  FailureClass failure_class() const noexcept { return cls_; }

 private:
  FailureClass cls_;
};

struct StructuralError : Error {
  explicit StructuralError(const std::string& w) : Error(FailureClass::structural, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(FailureClass::domain, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(FailureClass::config, w) {}
};
struct VacuumError : Error {
  explicit VacuumError(const std::string& w) : Error(FailureClass::vacuum, w) {}
};
struct StepSizeError : Error {
  explicit StepSizeError(const std::string& w) : Error(FailureClass::cfl, w) {}
};
struct DivergenceError : Error {
  explicit DivergenceError(const std::string& w) : Error(FailureClass::divergence, w) {}
};
struct RejectedCase : Error {
  explicit RejectedCase(const std::string& w) : Error(FailureClass::rejected, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(FailureClass::io, w) {}
};

}  // namespace nsp
