#include "lr2sd/doa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lr2sd {

void GridParams::validate() const {
  if (!(step_deg > 0.0)) throw std::domain_error("grid step must be positive");
  if (!(start_deg >= -90.0 && stop_deg <= 90.0 && start_deg < stop_deg))
    throw std::domain_error("grid range must satisfy -90 <= start < stop <= 90");
}

std::vector<double> GridParams::angles() const {
  validate();
  std::vector<double> out;
  const double span = stop_deg - start_deg;
  const auto intervals = static_cast<long>(std::floor(span / step_deg + 1e-9));
  // Drop the last point when it lands on the (excluded) stop angle.
  long last = intervals;
  if (std::abs(start_deg + static_cast<double>(intervals) * step_deg - stop_deg) <= 1e-9 * step_deg) --last;
  out.reserve(static_cast<std::size_t>(std::max(last, 0L)));
  for (long i = 1; i <= last; ++i) out.push_back(start_deg + static_cast<double>(i) * step_deg);
  return out;
}

SpectrumGrid music_spectrum(const CMatrix& Z_hat, int K, const GridParams& grid, const ArrayGeometry& geometry) {
  geometry.validate();
  const int M = geometry.num_sensors;
  if (Z_hat.rows() != M) throw std::domain_error("Z_hat row count differs from the array size");
  if (K < 1 || K >= M) throw std::domain_error("MUSIC needs 1 <= K < M");
  if (K > Z_hat.cols()) throw std::domain_error("MUSIC needs K <= number of snapshots");

  Eigen::JacobiSVD<CMatrix> svd(Z_hat, Eigen::ComputeThinU);
  const CMatrix L = svd.matrixU().leftCols(K);

  SpectrumGrid out{grid.start_deg, grid.stop_deg, grid.step_deg, {}};
  const std::vector<double> angles = grid.angles();
  out.values.reserve(angles.size());
  constexpr double kFloor = std::numeric_limits<double>::min();
  for (double theta : angles) {
    const CVector a = steering_vector(theta, geometry);
    const CVector residual = a - L * (L.adjoint() * a);
    out.values.push_back({theta, 1.0 / std::max(residual.squaredNorm(), kFloor)});
  }
  return out;
}

std::vector<double> estimate_doas(const SpectrumGrid& spectrum, int K, PeakRefinement refinement) {
  const auto& pts = spectrum.values;
  const auto n = pts.size();
  if (K < 1 || static_cast<std::size_t>(K) > n) throw std::domain_error("K must lie in [1, grid size]");

  std::vector<std::size_t> peaks;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i) {
    const bool interior = i > 0 && i + 1 < n;
    if (interior && pts[i].value > pts[i - 1].value && pts[i].value > pts[i + 1].value) {
      peaks.push_back(i);
    } else {
      others.push_back(i);
    }
  }
  auto by_value = [&](std::size_t a, std::size_t b) {
    if (pts[a].value != pts[b].value) return pts[a].value > pts[b].value;
    return a < b;
  };
  std::stable_sort(peaks.begin(), peaks.end(), by_value);

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(K));
  for (std::size_t j = 0; j < peaks.size() && out.size() < static_cast<std::size_t>(K); ++j) {
    const std::size_t i = peaks[j];
    double angle = pts[i].angle_deg;
    if (refinement == PeakRefinement::parabolic) {
      const double left = pts[i - 1].value, mid = pts[i].value, right = pts[i + 1].value;
      const double denom = left - 2.0 * mid + right;
      if (denom < 0.0) angle += 0.5 * (left - right) / denom * spectrum.step_deg;
    }
    out.push_back(angle);
  }
  if (out.size() < static_cast<std::size_t>(K)) {
    std::stable_sort(others.begin(), others.end(), by_value);
    for (std::size_t j = 0; out.size() < static_cast<std::size_t>(K); ++j) out.push_back(pts[others[j]].angle_deg);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lr2sd
