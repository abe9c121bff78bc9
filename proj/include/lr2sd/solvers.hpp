#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lr2sd/baselines.hpp"
#include "lr2sd/irls.hpp"

namespace lr2sd {

// music_raw performs no decomposition: Z_hat = Y and V_hat = 0.
enum class Algorithm { irls, irls_noiseless, svt, apg, admm, music_raw };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Parameters for every algorithm, kept together so sweeps over lambda1,
/// lambda2 or mu reach IRLS and the baselines alike.
struct SolverConfig {
  IrlsParams irls;
  BaselineParams baseline;

  // Writes lambda1/lambda2 into both parameter sets.
  void set_lambda1(double value);
  void set_lambda2(double value);
};

SolveResult run_solver(Algorithm algorithm, const CMatrix& Y, const SolverConfig& config);

}  // namespace lr2sd
