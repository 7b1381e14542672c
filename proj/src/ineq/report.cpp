#include "nsp/ineq/report.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "nsp/error.hpp"
#include "nsp/format.hpp"

namespace nsp::ineq {

namespace {

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return i + 1 < v.size() ? v[i] + frac * (v[i + 1] - v[i]) : v[i];
}

}  // namespace

void RatioReport::add(int n, std::uint64_t seed, const std::string& tag, double lhs, double rhs) {
  if (!(rhs > 0.0) || !std::isfinite(rhs)) throw DomainError("inequality trial has a nonpositive right-hand side");
  const double ratio = lhs / rhs;
  if (!std::isfinite(ratio) || lhs < 0.0) throw DomainError("inequality trial ratio is not finite");
  trials_.push_back({n, seed, tag, lhs, rhs, ratio});
}

std::vector<std::string> RatioReport::tags() const {
  std::vector<std::string> out;
  for (const auto& t : trials_)
    if (std::find(out.begin(), out.end(), t.tag) == out.end()) out.push_back(t.tag);
  return out;
}

std::vector<Summary> RatioReport::summaries() const {
  std::vector<std::pair<std::string, int>> keys;
  for (const auto& t : trials_) {
    const std::pair<std::string, int> k{t.tag, t.n};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  std::vector<Summary> out;
  for (const auto& [tag, n] : keys) {
    std::vector<double> r;
    for (const auto& t : trials_)
      if (t.tag == tag && t.n == n) r.push_back(t.ratio);
    out.push_back({tag, n, r.size(), quantile(r, 0.0), quantile(r, 0.1), quantile(r, 0.5), quantile(r, 0.9),
                   quantile(r, 1.0)});
  }
  return out;
}

double RatioReport::max_ratio(const std::string& tag) const {
  double m = 0.0;
  for (const auto& t : trials_)
    if (tag.empty() || t.tag == tag) m = std::max(m, t.ratio);
  return m;
}

double RatioReport::min_ratio(const std::string& tag) const {
  double m = INFINITY;
  for (const auto& t : trials_)
    if (tag.empty() || t.tag == tag) m = std::min(m, t.ratio);
  return m;
}

double RatioReport::median_ratio(const std::string& tag) const {
  std::vector<double> r;
  for (const auto& t : trials_)
    if (tag.empty() || t.tag == tag) r.push_back(t.ratio);
  if (r.empty()) throw StructuralError("no trials for tag " + tag);
  return quantile(r, 0.5);
}

double RatioReport::finest_max(const std::string& tag) const {
  int n = -1;
  double m = 0.0;
  for (const auto& s : summaries())
    if (s.tag == tag && s.n > n) {
      n = s.n;
      m = s.max;
    }
  if (n < 0) throw StructuralError("no trials for tag " + tag);
  return m;
}

double RatioReport::refinement_growth(const std::string& tag) const {
  double g = 0.0;
  for (const auto& tg : tags()) {
    if (!tag.empty() && tg != tag) continue;
    std::vector<Summary> s;
    for (const auto& x : summaries())
      if (x.tag == tg) s.push_back(x);
    std::sort(s.begin(), s.end(), [](const Summary& a, const Summary& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i - 1].max > 0.0) g = std::max(g, s[i].max / s[i - 1].max - 1.0);
  }
  return g;
}

void RatioReport::set_extra(const std::string& key, double value) {
  for (auto& [k, v] : extras_)
    if (k == key) {
      v = value;
      return;
    }
  extras_.emplace_back(key, value);
}

double RatioReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras_)
    if (k == key) return v;
  throw StructuralError("report has no entry " + key);
}

std::string RatioReport::to_csv() const {
  std::string out = "case,n,seed,tag,lhs,rhs,ratio\n";
  for (const auto& t : trials_) {
    out += name_ + ',' + std::to_string(t.n) + ',' + std::to_string(t.seed) + ',' + t.tag + ',' +
           format_double(t.lhs) + ',' + format_double(t.rhs) + ',' + format_double(t.ratio) + '\n';
  }
  return out;
}

std::string RatioReport::summary_json() const {
  nlohmann::ordered_json j;
  j["case"] = name_;
  j["trials"] = trials_.size();
  auto& grids = j["summaries"] = nlohmann::ordered_json::array();
  for (const auto& s : summaries()) {
    grids.push_back({{"tag", s.tag}, {"n", s.n}, {"count", s.count}, {"min", s.min}, {"q10", s.q10},
                     {"median", s.median}, {"q90", s.q90}, {"max", s.max}});
  }
  auto& growth = j["refinement_growth"] = nlohmann::ordered_json::object();
  for (const auto& tg : tags()) growth[tg] = refinement_growth(tg);
  auto& ex = j["extras"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : extras_) ex[k] = v;
  return j.dump(2) + "\n";
}

}  // namespace nsp::ineq
