#ifndef CRSU2_REPORT_HPP
#define CRSU2_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace crsu2 {

/// One verification outcome. A check passes when the residual is below the
/// tolerance, or above it for lower-bound checks.
struct CheckRecord {
  enum class Bound { below, above };

  std::string name;
  std::string inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::below;
  bool passed = false;

  static CheckRecord below(std::string name, std::string inputs, double residual, double tolerance) {
    return {std::move(name), std::move(inputs), residual, tolerance, Bound::below, residual < tolerance};
  }
  static CheckRecord above(std::string name, std::string inputs, double residual, double tolerance) {
    return {std::move(name), std::move(inputs), residual, tolerance, Bound::above, residual > tolerance};
  }
};

struct Report {
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const std::vector<CheckRecord>& rs) { records.insert(records.end(), rs.begin(), rs.end()); }

  std::size_t passed_count() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.passed ? 1 : 0;
    return n;
  }
  std::size_t failed_count() const { return records.size() - passed_count(); }
  bool passed() const { return failed_count() == 0; }

  const CheckRecord* first_failure() const {
    for (const auto& r : records)
      if (!r.passed) return &r;
    return nullptr;
  }
};

}  // namespace crsu2

#endif  // CRSU2_REPORT_HPP
