#include "nsp/norm_series.hpp"

#include <algorithm>
#include <cmath>

#include "nsp/error.hpp"

namespace nsp {

void NormSeries::add(double t, const std::string& name, double value) {
  if (!std::isfinite(value) || value < 0.0)
    throw DomainError("norm '" + name + "' must be finite and nonnegative");
  if (!std::isfinite(t)) throw DomainError("norm time must be finite");
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->name != name) continue;
    if (!(t > it->t)) throw DomainError("times for norm '" + name + "' must increase strictly");
    break;
  }
  records_.push_back({t, name, value});
}

bool NormSeries::contains(const std::string& name) const {
  return std::any_of(records_.begin(), records_.end(),
                     [&](const NormRecord& r) { return r.name == name; });
}

std::vector<std::string> NormSeries::names() const {
  std::vector<std::string> out;
  for (const auto& r : records_)
    if (std::find(out.begin(), out.end(), r.name) == out.end()) out.push_back(r.name);
  return out;
}

std::pair<std::vector<double>, std::vector<double>> NormSeries::series(const std::string& name) const {
  std::pair<std::vector<double>, std::vector<double>> out;
  for (const auto& r : records_) {
    if (r.name != name) continue;
    out.first.push_back(r.t);
    out.second.push_back(r.value);
  }
  if (out.first.empty()) throw StructuralError("norm series has no entry named '" + name + "'");
  return out;
}

void NormSeries::append(const NormSeries& other) {
  for (const auto& r : other.records_) add(r.t, r.name, r.value);
}

}  // namespace nsp
