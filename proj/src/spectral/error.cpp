#include "nsp/error.hpp"

namespace nsp {

const char* failure_name(FailureClass c) noexcept {
  switch (c) {
    case FailureClass::structural: return "structural";
    case FailureClass::domain: return "domain";
    case FailureClass::config: return "config";
    case FailureClass::vacuum: return "vacuum";
    case FailureClass::cfl: return "cfl";
    case FailureClass::divergence: return "divergence";
    case FailureClass::rejected: return "rejected";
    case FailureClass::io: return "io";
  }
  return "unknown";
}

}  // namespace nsp
