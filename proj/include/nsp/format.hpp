#pragma once

#include <charconv>
#include <string>

namespace nsp {

/// Shortest round-trip decimal form of x.
inline std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace nsp
