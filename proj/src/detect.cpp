#include "lr2sd/detect.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace lr2sd {

DetectionResult detect_distorted(const CMatrix& V_hat, double h_factor) {
  const auto M = static_cast<int>(V_hat.rows());
  if (M < 3) throw std::domain_error("distorted-sensor detection needs at least 3 sensors");
  if (!(h_factor > 0.0)) throw std::domain_error("h_factor must be positive");

  DetectionResult out;
  out.row_norms = V_hat.rowwise().norm();
  std::vector<int> order(static_cast<std::size_t>(M));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.row_norms(a) < out.row_norms(b); });
  auto sorted = [&](int i) { return out.row_norms(order[static_cast<std::size_t>(i - 1)]); };

  double d = sorted(2) - sorted(1);
  if (d <= 0.0) d = std::numeric_limits<double>::epsilon() * sorted(M);
  const double h = h_factor * d;
  out.threshold_used = h;

  int i_fail = M + 1;
  if (h > 0.0) {
    for (int i = 3; i <= M; ++i) {
      if (sorted(i) - sorted(i - 1) >= h) {
        i_fail = i;
        break;
      }
    }
  }
  out.m_fail = M - i_fail + 1;
  for (int i = i_fail; i <= M; ++i) out.distorted_indices.push_back(order[static_cast<std::size_t>(i - 1)] + 1);
  std::sort(out.distorted_indices.begin(), out.distorted_indices.end());
  return out;
}

}  // namespace lr2sd
