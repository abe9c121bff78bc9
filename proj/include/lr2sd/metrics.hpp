#pragma once

#include <span>
#include <vector>

#include "lr2sd/detect.hpp"

namespace lr2sd {

/// sqrt( 1/(Q K) * sum_q sum_k (est_{k,q} - truth_k)^2 ), in degrees. Each
/// estimate and the truth are paired after sorting ascending. Throws
/// std::domain_error on an empty set or a length mismatch.
double rmse(std::span<const std::vector<double>> estimates, std::span<const double> truth);

// max_k |est_k - truth_k| <= threshold, after ascending pairing.
bool resolution_success(std::span<const double> estimate, std::span<const double> truth, double threshold_deg);

// Exact recovery of the distorted set (and therefore of its size).
bool detection_success(const DetectionResult& result, std::span<const int> truth_set);

}  // namespace lr2sd
