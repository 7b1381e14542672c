#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nsp::ineq {

struct Trial {
  int n = 0;
  std::uint64_t seed = 0;
  std::string tag;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct Summary {
  std::string tag;
  int n = 0;
  std::size_t count = 0;
  double min = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

/// Per-trial LHS/RHS ratios of one inequality case with per-grid summaries.
class RatioReport {
 public:
  explicit RatioReport(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<Trial>& trials() const { return trials_; }

  /// Records one trial; throws DomainError when rhs <= 0 or the ratio is not
  /// finite.
  void add(int n, std::uint64_t seed, const std::string& tag, double lhs, double rhs);

  /// Grouped by (tag, n) in order of first appearance.
  std::vector<Summary> summaries() const;
  std::vector<std::string> tags() const;

  /// Over all trials, or over one tag.
  double max_ratio(const std::string& tag = {}) const;
  double min_ratio(const std::string& tag = {}) const;
  double median_ratio(const std::string& tag = {}) const;
  /// Max ratio on the largest grid for a tag.
  double finest_max(const std::string& tag) const;

  /// Largest relative growth max(n_{k+1}) / max(n_k) - 1 over consecutive
  /// grids of a tag; 0 with a single grid.
  double refinement_growth(const std::string& tag = {}) const;

  void set_extra(const std::string& key, double value);
  double extra(const std::string& key) const;
  const std::vector<std::pair<std::string, double>>& extras() const { return extras_; }

  /// case,n,seed,tag,lhs,rhs,ratio
  std::string to_csv() const;
  std::string summary_json() const;

 private:
  std::string name_;
  std::vector<Trial> trials_;
  std::vector<std::pair<std::string, double>> extras_;
};

}  // namespace nsp::ineq
