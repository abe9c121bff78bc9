#include "lr2sd/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>
#include <utility>

#include "lr2sd/detect.hpp"
#include "lr2sd/matrix_io.hpp"
#include "lr2sd/metrics.hpp"
#include "lr2sd/rng.hpp"

namespace lr2sd {

namespace {

constexpr std::array<std::pair<SweepVariable, std::string_view>, 7> kSweepNames{{
    {SweepVariable::snr_db, "snr_db"},
    {SweepVariable::num_snapshots, "num_snapshots"},
    {SweepVariable::separation_deg, "separation_deg"},
    {SweepVariable::mu, "mu"},
    {SweepVariable::lambda1, "lambda1"},
    {SweepVariable::lambda2, "lambda2"},
    {SweepVariable::num_sensors, "num_sensors"},
}};

int as_count(double value, const char* what) {
  if (value != std::floor(value) || value < 1.0 || value > 1e9)
    throw std::domain_error(std::string(what) + " sweep values must be positive integers");
  return static_cast<int>(value);
}

struct TrialOutcome {
  bool ok = false;
  std::vector<double> doas;
  bool resolved = false;
  bool detected = false;
  double time_s = 0.0;
  int iterations = 0;
};

// Outcomes of every algorithm on one (sweep value, trial) scene.
std::vector<TrialOutcome> run_trial(const ExperimentSpec& spec, double sweep_value, int trial) {
  SceneConfig config = spec.scene_at(sweep_value);
  config.seed = derive_seed(spec.base_seed, static_cast<std::uint64_t>(trial));
  const Scene scene = synthesize_scene(config);
  const SolverConfig solver = spec.solver_at(sweep_value);
  const int K = static_cast<int>(config.doas_deg.size());

  std::vector<TrialOutcome> out;
  out.reserve(spec.algorithms.size());
  for (Algorithm algorithm : spec.algorithms) {
    TrialOutcome outcome;
    try {
      const SolveResult solved = run_solver(algorithm, scene.Y, solver);
      const SpectrumGrid spectrum = music_spectrum(solved.Z_hat, K, spec.grid, config.geometry);
      outcome.doas = estimate_doas(spectrum, K, spec.refinement);
      outcome.resolved = resolution_success(outcome.doas, config.doas_deg, spec.success_threshold_deg);
      const DetectionResult detection = detect_distorted(solved.V_hat, spec.h_factor);
      outcome.detected = detection_success(detection, scene.distorted_set);
      outcome.time_s = solved.wall_time_s;
      outcome.iterations = solved.iterations;
      outcome.ok = true;
    } catch (const SolverError&) {
      outcome.ok = false;
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace

std::string_view to_string(SweepVariable var) {
  for (const auto& [value, name] : kSweepNames)
    if (value == var) return name;
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  for (const auto& [value, label] : kSweepNames)
    if (label == name) return value;
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (num_trials < 1) throw std::domain_error("num_trials must be at least 1");
  if (sweep_values.empty()) throw std::domain_error("sweep_values must not be empty");
  if (algorithms.empty()) throw std::domain_error("at least one algorithm is required");
  if (!(success_threshold_deg >= 0.0)) throw std::domain_error("success_threshold_deg must be non-negative");
  if (!(h_factor > 0.0)) throw std::domain_error("h_factor must be positive");
  if (sweep_var == SweepVariable::separation_deg && scene.doas_deg.size() != 2)
    throw std::domain_error("separation sweeps need exactly two DOAs in the scene template");
  grid.validate();
  for (double value : sweep_values) {
    scene_at(value).validate();
    SolverConfig solver = solver_at(value);
    solver.irls.validate();
    solver.baseline.validate();
  }
}

SceneConfig ExperimentSpec::scene_at(double sweep_value) const {
  SceneConfig config = scene;
  switch (sweep_var) {
    case SweepVariable::snr_db:
      config.snr_db = sweep_value;
      break;
    case SweepVariable::num_snapshots:
      config.num_snapshots = as_count(sweep_value, "num_snapshots");
      break;
    case SweepVariable::num_sensors:
      config.geometry.num_sensors = as_count(sweep_value, "num_sensors");
      break;
    case SweepVariable::separation_deg:
      config.doas_deg = {scene.doas_deg.at(0), scene.doas_deg.at(0) + sweep_value};
      break;
    default:
      break;
  }
  return config;
}

SolverConfig ExperimentSpec::solver_at(double sweep_value) const {
  SolverConfig config = solver;
  switch (sweep_var) {
    case SweepVariable::mu:
      config.irls.mu = sweep_value;
      break;
    case SweepVariable::lambda1:
      config.set_lambda1(sweep_value);
      break;
    case SweepVariable::lambda2:
      config.set_lambda2(sweep_value);
      break;
    default:
      break;
  }
  return config;
}

MetricsTable run_monte_carlo(const ExperimentSpec& spec, int workers) {
  spec.validate();
  const std::size_t num_values = spec.sweep_values.size();
  const auto Q = static_cast<std::size_t>(spec.num_trials);
  const std::size_t num_tasks = num_values * Q;

  std::vector<std::vector<TrialOutcome>> outcomes(num_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t task = next.fetch_add(1);
      if (task >= num_tasks) return;
      try {
        outcomes[task] = run_trial(spec, spec.sweep_values[task / Q], static_cast<int>(task % Q));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };

  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto thread_count = std::min<std::size_t>(static_cast<std::size_t>(workers), num_tasks);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(thread_count);
    for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  MetricsTable table;
  for (std::size_t s = 0; s < num_values; ++s) {
    const std::vector<double> truth = spec.scene_at(spec.sweep_values[s]).doas_deg;
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      std::vector<std::vector<double>> estimates;
      int errors = 0, resolved = 0, detected = 0;
      double time_sum = 0.0, iter_sum = 0.0;
      for (std::size_t q = 0; q < Q; ++q) {
        const TrialOutcome& o = outcomes[s * Q + q][a];
        if (!o.ok) {
          ++errors;
          continue;
        }
        estimates.push_back(o.doas);
        resolved += o.resolved;
        detected += o.detected;
        time_sum += o.time_s;
        iter_sum += o.iterations;
      }
      const auto ok = static_cast<double>(estimates.size());
      const double nan = std::numeric_limits<double>::quiet_NaN();
      MetricsRow row{spec.sweep_var,
                     spec.sweep_values[s],
                     spec.algorithms[a],
                     estimates.empty() ? nan : rmse(estimates, truth),
                     estimates.empty() ? nan : resolved / ok,
                     estimates.empty() ? nan : detected / ok,
                     estimates.empty() || !spec.record_timing ? 0.0 : time_sum / ok,
                     estimates.empty() ? nan : iter_sum / ok,
                     errors,
                     spec.num_trials};
      table.rows.push_back(row);
    }
  }
  return table;
}

void write_metrics_csv(const MetricsTable& table, std::ostream& out) {
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : table.rows) {
    out << to_string(r.sweep_var) << ',' << format_double(r.sweep_value) << ',' << to_string(r.algorithm) << ','
        << format_double(r.rmse_deg) << ',' << format_double(r.res_prob) << ',' << format_double(r.detec_rate)
        << ',' << format_double(r.mean_time_s) << ',' << format_double(r.mean_iters) << ',' << r.errors << ','
        << r.trials << '\n';
  }
}

}  // namespace lr2sd
