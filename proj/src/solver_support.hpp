#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace lr2sd::detail {

// |f - f_prev| / |f| <= epsilon. Exact stagnation, or a change below the
// resolution of double precision, also counts: epsilon may be set below
// what the relative test can ever resolve.
inline bool relative_change_converged(double f_prev, double f, double epsilon) {
  const double diff = std::abs(f - f_prev);
  if (diff == 0.0) return true;
  const double rel = diff / std::abs(f);
  return rel <= epsilon || rel < 4.0 * std::numeric_limits<double>::epsilon();
}

// Keeps every objective value, or only the first and the most recent.
class TraceRecorder {
 public:
  explicit TraceRecorder(bool full) : full_(full) {}

  void push(double value) {
    if (full_ || values_.size() < 2) {
      values_.push_back(value);
    } else {
      values_.back() = value;
    }
  }

  std::vector<double> take() { return std::move(values_); }

 private:
  bool full_;
  std::vector<double> values_;
};

}  // namespace lr2sd::detail
