#include "lr2sd/array_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lr2sd/rng.hpp"

namespace lr2sd {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require(bool cond, const std::string& what) {
  if (!cond) throw std::domain_error(what);
}

}  // namespace

void ArrayGeometry::validate() const {
  require(num_sensors >= 2, "array needs at least 2 sensors");
  require(element_spacing > 0.0 && std::isfinite(element_spacing),
          "element spacing must be positive");
}

double SceneConfig::noise_variance() const {
  if (noiseless()) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

void SceneConfig::validate() const {
  geometry.validate();
  const int M = geometry.num_sensors;
  const auto K = static_cast<int>(doas_deg.size());
  require(K >= 1, "at least one DOA is required");
  require(num_snapshots >= 1, "num_snapshots must be positive");
  require(K < std::min(M, num_snapshots), "number of sources must be below min(M, T)");
  for (std::size_t i = 0; i < doas_deg.size(); ++i) {
    require(doas_deg[i] > -90.0 && doas_deg[i] < 90.0, "DOA outside (-90, 90) degrees");
    for (std::size_t j = 0; j < i; ++j)
      require(doas_deg[i] != doas_deg[j], "DOAs must be pairwise distinct");
  }
  require(!std::isnan(snr_db) && snr_db != -kNoiseless, "snr_db must be a number or +inf");
  require(num_distorted >= 0 && num_distorted <= M, "num_distorted must lie in [0, M]");
  require(gain_range.first <= gain_range.second, "gain_range is reversed");
  require(phase_range_deg.first <= phase_range_deg.second, "phase_range_deg is reversed");
}

CVector steering_vector(double theta_deg, const ArrayGeometry& geometry) {
  geometry.validate();
  if (!(theta_deg > -90.0 && theta_deg < 90.0))
    throw std::domain_error("steering angle outside (-90, 90) degrees");
  const double phase_step = std::numbers::pi * geometry.element_spacing * std::sin(theta_deg * kDegToRad);
  CVector a(geometry.num_sensors);
  a(0) = Complex(1.0, 0.0);
  for (int m = 1; m < geometry.num_sensors; ++m) a(m) = std::polar(1.0, phase_step * m);
  return a;
}

CMatrix steering_matrix(std::span<const double> doas_deg, const ArrayGeometry& geometry) {
  if (doas_deg.empty()) throw std::domain_error("steering matrix needs at least one angle");
  CMatrix A(geometry.num_sensors, static_cast<Eigen::Index>(doas_deg.size()));
  for (std::size_t k = 0; k < doas_deg.size(); ++k)
    A.col(static_cast<Eigen::Index>(k)) = steering_vector(doas_deg[k], geometry);
  return A;
}

Scene synthesize_scene(const SceneConfig& config) {
  config.validate();
  const int M = config.geometry.num_sensors;
  const int T = config.num_snapshots;
  const auto K = static_cast<Eigen::Index>(config.doas_deg.size());

  Rng rng(config.seed);

  // Partial Fisher-Yates: the first num_distorted slots form the subset.
  std::vector<int> indices(static_cast<std::size_t>(M));
  std::iota(indices.begin(), indices.end(), 1);
  for (int i = 0; i < config.num_distorted; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(M - i)));
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  }
  std::vector<int> distorted(indices.begin(), indices.begin() + config.num_distorted);
  std::sort(distorted.begin(), distorted.end());

  CVector gamma = CVector::Zero(M);
  for (int m : distorted) {
    const double rho = rng.uniform(config.gain_range.first, config.gain_range.second);
    const double phi = rng.uniform(config.phase_range_deg.first, config.phase_range_deg.second) * kDegToRad;
    gamma(m - 1) = std::polar(rho, phi);
  }

  CMatrix S(K, T);
  for (int t = 0; t < T; ++t)
    for (Eigen::Index k = 0; k < K; ++k) S(k, t) = rng.complex_normal();

  CMatrix N = CMatrix::Zero(M, T);
  if (!config.noiseless()) {
    const double sigma = std::sqrt(config.noise_variance());
    for (int t = 0; t < T; ++t)
      for (int m = 0; m < M; ++m) N(m, t) = sigma * rng.complex_normal();
  }

  Scene scene;
  scene.Z_true = steering_matrix(config.doas_deg, config.geometry) * S;
  scene.V_true = gamma.asDiagonal() * scene.Z_true;
  scene.N_true = std::move(N);
  scene.Y = (scene.Z_true + scene.V_true) + scene.N_true;
  scene.gamma = std::move(gamma);
  scene.distorted_set = std::move(distorted);
  scene.config = config;
  return scene;
}

}  // namespace lr2sd
