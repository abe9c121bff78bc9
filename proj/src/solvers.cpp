#include "lr2sd/solvers.hpp"

#include <array>
#include <utility>

namespace lr2sd {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kNames{{
    {Algorithm::irls, "irls"},
    {Algorithm::irls_noiseless, "irls_noiseless"},
    {Algorithm::svt, "svt"},
    {Algorithm::apg, "apg"},
    {Algorithm::admm, "admm"},
    {Algorithm::music_raw, "music_raw"},
}};

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  for (const auto& [value, name] : kNames)
    if (value == algorithm) return name;
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [value, label] : kNames)
    if (label == name) return value;
  return std::nullopt;
}

void SolverConfig::set_lambda1(double value) {
  irls.lambda1 = value;
  baseline.lambda1 = value;
}

void SolverConfig::set_lambda2(double value) {
  irls.lambda2 = value;
  baseline.lambda2 = value;
}

SolveResult run_solver(Algorithm algorithm, const CMatrix& Y, const SolverConfig& config) {
  switch (algorithm) {
    case Algorithm::irls:
      return irls_noisy(Y, config.irls);
    case Algorithm::irls_noiseless:
      return irls_noiseless(Y, config.irls);
    case Algorithm::svt:
      return svt_solve(Y, config.baseline);
    case Algorithm::apg:
      return apg_solve(Y, config.baseline);
    case Algorithm::admm:
      return admm_solve(Y, config.baseline);
    case Algorithm::music_raw: {
      SolveResult raw;
      raw.Z_hat = Y;
      raw.V_hat = CMatrix::Zero(Y.rows(), Y.cols());
      raw.termination = Termination::tolerance_reached;
      return raw;
    }
  }
  throw std::domain_error("unknown algorithm");
}

}  // namespace lr2sd
