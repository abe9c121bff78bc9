#include "lr2sd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lr2sd {

namespace {

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double rmse(std::span<const std::vector<double>> estimates, std::span<const double> truth) {
  if (estimates.empty() || truth.empty()) throw std::domain_error("rmse needs at least one trial and one source");
  const std::vector<double> ref = sorted_copy(truth);
  double total = 0.0;
  for (const auto& est : estimates) {
    if (est.size() != ref.size()) throw std::domain_error("estimate size differs from the number of sources");
    const std::vector<double> e = sorted_copy(est);
    for (std::size_t k = 0; k < ref.size(); ++k) total += (e[k] - ref[k]) * (e[k] - ref[k]);
  }
  return std::sqrt(total / static_cast<double>(estimates.size() * ref.size()));
}

bool resolution_success(std::span<const double> estimate, std::span<const double> truth, double threshold_deg) {
  if (estimate.size() != truth.size()) throw std::domain_error("estimate size differs from the number of sources");
  const std::vector<double> e = sorted_copy(estimate);
  const std::vector<double> ref = sorted_copy(truth);
  for (std::size_t k = 0; k < ref.size(); ++k)
    if (!(std::abs(e[k] - ref[k]) <= threshold_deg)) return false;
  return true;
}

bool detection_success(const DetectionResult& result, std::span<const int> truth_set) {
  const std::set<int> found(result.distorted_indices.begin(), result.distorted_indices.end());
  const std::set<int> truth(truth_set.begin(), truth_set.end());
  return found == truth;
}

}  // namespace lr2sd
