#pragma once

#include <vector>

#include "lr2sd/types.hpp"

namespace lr2sd {

struct DetectionResult {
  int m_fail = 0;
  std::vector<int> distorted_indices;  // sorted, 1-based
  RVector row_norms;
  double threshold_used = 0.0;
};

/// Gap test on the sorted row norms of V_hat.
///
/// With v sorted ascending, d = v(2) - v(1) and h = h_factor * d; the first
/// i in 3..M with v(i) - v(i-1) >= h marks the start of the distorted block,
/// and the M - i + 1 largest rows are reported. If d is zero it is replaced
/// by machine epsilon times the largest norm; a zero threshold never fires.
/// Requires M >= 3.
DetectionResult detect_distorted(const CMatrix& V_hat, double h_factor = 10.0);

}  // namespace lr2sd
