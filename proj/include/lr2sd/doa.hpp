#pragma once

#include <vector>

#include "lr2sd/array_sim.hpp"
#include "lr2sd/types.hpp"

namespace lr2sd {

/// Scan range for the MUSIC pseudo-spectrum; both endpoints are excluded,
/// points sit at start + i*step for i = 1, 2, ...
struct GridParams {
  double start_deg = -90.0;
  double stop_deg = 90.0;
  double step_deg = 0.05;

  void validate() const;
  std::vector<double> angles() const;
};

struct SpectrumPoint {
  double angle_deg;
  double value;
};

struct SpectrumGrid {
  double start_deg = -90.0;
  double stop_deg = 90.0;
  double step_deg = 0.05;
  std::vector<SpectrumPoint> values;
};

/// P(theta) = 1 / (a^H (I - L L^H) a) with L the K dominant left singular
/// vectors of Z_hat. Requires 1 <= K < M and K <= T.
SpectrumGrid music_spectrum(const CMatrix& Z_hat, int K, const GridParams& grid, const ArrayGeometry& geometry);

enum class PeakRefinement { none, parabolic };

/// Angles of the K largest strict interior local maxima, ascending. Missing
/// peaks are filled with the largest remaining grid values; equal values
/// break toward the lower angle.
std::vector<double> estimate_doas(const SpectrumGrid& spectrum, int K,
                                  PeakRefinement refinement = PeakRefinement::none);

}  // namespace lr2sd
