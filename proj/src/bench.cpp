#include "lr2sd/bench.hpp"

#include <ostream>

#include "lr2sd/matrix_io.hpp"
#include "lr2sd/prox.hpp"
#include "lr2sd/rng.hpp"

namespace lr2sd {

void BenchSpec::validate() const {
  if (algorithms.empty()) throw std::domain_error("bench needs at least one algorithm");
  if (snapshots.empty() || sensors.empty()) throw std::domain_error("bench needs snapshot and sensor lists");
  if (repeats < 1) throw std::domain_error("repeats must be at least 1");
  for (int M : sensors) {
    for (int T : snapshots) {
      SceneConfig config = scene;
      config.geometry.num_sensors = M;
      config.num_snapshots = T;
      config.validate();
    }
  }
  solver.irls.validate();
  solver.baseline.validate();
}

std::vector<TimingRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  const double l1 = spec.solver.baseline.lambda1;
  const double l2 = spec.solver.baseline.lambda2;
  std::vector<TimingRow> rows;
  for (int M : spec.sensors) {
    for (int T : spec.snapshots) {
      std::vector<TimingRow> block;
      for (Algorithm algorithm : spec.algorithms) block.push_back({M, T, algorithm, 0.0, 0.0, 0.0, spec.repeats});
      for (int r = 0; r < spec.repeats; ++r) {
        SceneConfig config = spec.scene;
        config.geometry.num_sensors = M;
        config.num_snapshots = T;
        config.seed = derive_seed(spec.base_seed, static_cast<std::uint64_t>(r));
        const Scene scene = synthesize_scene(config);
        for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
          const SolveResult solved = run_solver(spec.algorithms[a], scene.Y, spec.solver);
          block[a].objective += composite_objective(scene.Y, solved.Z_hat, solved.V_hat, l1, l2);
          block[a].mean_time_s += solved.wall_time_s;
          block[a].mean_iters += solved.iterations;
        }
      }
      for (TimingRow& row : block) {
        row.objective /= spec.repeats;
        row.mean_time_s /= spec.repeats;
        row.mean_iters /= spec.repeats;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_timing_csv(const std::vector<TimingRow>& rows, std::ostream& out) {
  out << kTimingHeader << '\n';
  for (const TimingRow& r : rows) {
    out << r.num_sensors << ',' << r.num_snapshots << ',' << to_string(r.algorithm) << ','
        << format_double(r.objective) << ',' << format_double(r.mean_time_s) << ',' << format_double(r.mean_iters)
        << ',' << r.repeats << '\n';
  }
}

}  // namespace lr2sd
