#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "lr2sd/types.hpp"

namespace lr2sd {

/// Uniform linear array; spacing is expressed in half-wavelengths.
struct ArrayGeometry {
  int num_sensors = 10;
  double element_spacing = 1.0;

  void validate() const;
};

/// Parameters of one synthetic trial.
///
/// snr_db = +infinity disables the noise term entirely. gain_range bounds the
/// magnitude rho of each distortion coefficient gamma = rho * exp(j phi).
struct SceneConfig {
  ArrayGeometry geometry;
  std::vector<double> doas_deg{-10.0, 10.0};
  int num_snapshots = 100;
  double snr_db = 0.0;
  int num_distorted = 4;
  std::pair<double, double> gain_range{0.0, 10.0};
  std::pair<double, double> phase_range_deg{-15.0, 15.0};
  std::uint64_t seed = 0;

  static constexpr double kNoiseless = std::numeric_limits<double>::infinity();

  bool noiseless() const { return snr_db == kNoiseless; }
  // Per-entry noise variance 10^(-snr/10); zero when noiseless.
  double noise_variance() const;
  void validate() const;
};

/// Ground truth and observation of one trial: Y = Z_true + V_true + N_true.
struct Scene {
  CMatrix Y;
  CMatrix Z_true;
  CMatrix V_true;
  CMatrix N_true;
  CVector gamma;
  std::vector<int> distorted_set;  // sorted, 1-based
  SceneConfig config;
};

// a_m(theta) = exp(j*pi*spacing*(m-1)*sin(theta)). Throws std::domain_error
// unless theta is in (-90, 90) degrees.
CVector steering_vector(double theta_deg, const ArrayGeometry& geometry);

CMatrix steering_matrix(std::span<const double> doas_deg, const ArrayGeometry& geometry);

/// Draws a scene. Draw order is fixed: distorted positions, then (rho, phi)
/// per distorted sensor in ascending index order, then the source matrix
/// column by column, then the noise matrix column by column.
Scene synthesize_scene(const SceneConfig& config);

}  // namespace lr2sd
