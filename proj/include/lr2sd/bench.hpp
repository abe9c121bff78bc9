#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "lr2sd/array_sim.hpp"
#include "lr2sd/solvers.hpp"

namespace lr2sd {

/// Timing protocol: every algorithm is run on the same seeded scenes for
/// each (num_sensors, num_snapshots) pair; only the solver call is timed.
struct BenchSpec {
  SceneConfig scene;
  SolverConfig solver;
  std::vector<Algorithm> algorithms{Algorithm::irls, Algorithm::svt, Algorithm::apg, Algorithm::admm};
  std::vector<int> snapshots{100, 500};
  std::vector<int> sensors{10};
  int repeats = 5;
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct TimingRow {
  int num_sensors;
  int num_snapshots;
  Algorithm algorithm;
  double objective;  // mean unsmoothed objective at the solver output
  double mean_time_s;
  double mean_iters;
  int repeats;
};

std::vector<TimingRow> run_bench(const BenchSpec& spec);

inline constexpr std::string_view kTimingHeader =
    "num_sensors,num_snapshots,algorithm,objective,mean_time_s,mean_iters,repeats";

void write_timing_csv(const std::vector<TimingRow>& rows, std::ostream& out);

}  // namespace lr2sd
