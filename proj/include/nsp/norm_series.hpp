#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsp {

struct NormRecord {
  double t = 0.0;
  std::string name;
  double value = 0.0;
};

/// Time-stamped named norms. Times are strictly increasing per name and
/// values are finite and nonnegative; `add` enforces both.
class NormSeries {
 public:
  struct Link {
    std::string run_id;
    std::uint64_t seed = 0;
    std::string grid;
  };

  void add(double t, const std::string& name, double value);

  const std::vector<NormRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  bool contains(const std::string& name) const;
  /// Names in order of first appearance.
  std::vector<std::string> names() const;
  /// Times and values for one name; throws StructuralError when absent.
  std::pair<std::vector<double>, std::vector<double>> series(const std::string& name) const;

  void append(const NormSeries& other);

  Link link;

 private:
  std::vector<NormRecord> records_;
};

}  // namespace nsp
