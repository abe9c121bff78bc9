#pragma once

#include <optional>

#include "lr2sd/types.hpp"

namespace lr2sd {

/// Shared tuning for the SVT, APG and ADMM comparison solvers.
///
/// tau_svt defaults to 5 sqrt(M T) when unset; step_apg defaults to the
/// inverse Lipschitz constant of the fidelity gradient (1/2).
struct BaselineParams {
  double lambda1 = 2.0;
  double lambda2 = 0.2;
  std::optional<double> tau_svt;
  double step_svt = 0.9;
  double penalty_admm = 1.0;
  std::optional<double> step_apg;
  double epsilon = 1e-7;
  int k_max = 1000;
  bool record_trace = true;

  void validate() const;
  double tau_for(Eigen::Index rows, Eigen::Index cols) const;
};

/// Singular value thresholding on the tau-perturbed equality-constrained
/// problem. Each sweep sets Z = D_tau(W), V = S_{tau lambda2/lambda1}(W)
/// and then W += step_svt * (Y - Z - V). The trace records the unsmoothed
/// noisy objective. Throws SolverError when that objective blows up.
SolveResult svt_solve(const CMatrix& Y, const BaselineParams& params);

/// Accelerated proximal gradient (FISTA) on
///   1/2 ||Y - Z - V||^2 + lambda1 ||Z||_* + lambda2 ||V||_2,1
/// with a monotone restart: whenever an extrapolated step would raise the
/// objective, momentum is reset and a plain proximal step is taken from the
/// last accepted point.
SolveResult apg_solve(const CMatrix& Y, const BaselineParams& params);

/// ADMM for the same composite objective written with an explicit noise
/// block E:  min lambda1 ||Z||_* + lambda2 ||V||_2,1 + 1/2 ||E||^2  s.t.
/// Z + V + E = Y. Blocks are Z and the pair (V, E); the pair update is
/// closed form. Stops when the primal residual ||Y - Z - V - E|| and the
/// dual residual penalty * ||delta(V + E)|| are both <= epsilon ||Y||.
SolveResult admm_solve(const CMatrix& Y, const BaselineParams& params);

}  // namespace lr2sd
