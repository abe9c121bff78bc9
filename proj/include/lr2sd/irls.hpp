#pragma once

#include "lr2sd/types.hpp"

namespace lr2sd {

/// Tuning of the IRLS solvers. `lambda` is the noiseless row-sparsity
/// weight; `lambda1`/`lambda2` weight the nuclear and l2,1 terms of the
/// noisy problem. `mu` is the smoothing constant.
struct IrlsParams {
  double lambda = 2.0;
  double lambda1 = 2.0;
  double lambda2 = 0.2;
  double mu = 0.01;
  double epsilon = 1e-16;
  int k_max = 1000;
  bool record_trace = true;

  void validate() const;
};

// Hermitian eigendecomposition of Z Z^H + mu^2 I. Eigenvalues are ascending
// and clamped below at 1e-3 mu^2.
struct GramEigen {
  CMatrix vectors;
  RVector values;
};
GramEigen smoothed_gram_eigen(const CMatrix& Z, double mu);

/// P = (Z Z^H + mu^2 I)^(-1/2), the unique Hermitian positive-definite
/// inverse square root. With mu = 0 a rank-deficient Z raises SolverError.
CMatrix weight_p(const CMatrix& Z, double mu);

/// Diagonal of Q: entry i is 1 / sqrt(||V_i,:||^2 + mu^2).
RVector weight_q(const CMatrix& V, double mu);

// ||[Z, mu I]||_* = trace((Z Z^H + mu^2 I)^(1/2)).
double smoothed_nuclear_norm(const CMatrix& Z, double mu);
// ||[V, mu 1]||_2,1 = sum_i sqrt(||V_i,:||^2 + mu^2).
double smoothed_l21_norm(const CMatrix& V, double mu);

/// ||[Z, mu I]||_* + lambda ||[Y - Z, mu 1]||_2,1
double objective_noiseless(const CMatrix& Y, const CMatrix& Z, double lambda, double mu);

/// 1/2 ||Y - Z - V||_F^2 + lambda1 ||[Z, mu I]||_* + lambda2 ||[V, mu 1]||_2,1
double objective_noisy(const CMatrix& Y, const CMatrix& Z, const CMatrix& V, double lambda1,
                       double lambda2, double mu);

// Closed-form floors of the two smoothed objectives over all inputs.
double objective_floor_noiseless(int num_sensors, double lambda, double mu);
double objective_floor_noisy(int num_sensors, double lambda1, double lambda2, double mu);

/// Noiseless IRLS: Z <- lambda (P + lambda Q)^(-1) Q Y from Z = 0, with
/// P and Q evaluated at the current iterate and V_hat = Y - Z_hat.
SolveResult irls_noiseless(const CMatrix& Y, const IrlsParams& params);

/// Noisy IRLS: with P from Z_k and Q from V_k,
///   Z_{k+1} = (I + lambda1 P)^(-1) (Y - V_k)
///   V_{k+1} = (I + lambda2 Q)^(-1) (Y - Z_{k+1})
/// starting from Z = V = 0.
SolveResult irls_noisy(const CMatrix& Y, const IrlsParams& params);

// Stationarity residual ||(P + lambda Q) Z - lambda Q Y||_F of the noiseless
// objective, weights evaluated at Z.
double kkt_residual_noiseless(const CMatrix& Y, const CMatrix& Z, double lambda, double mu);

struct NoisyKktResiduals {
  double z;  // ||(I + lambda1 P) Z - (Y - V)||_F
  double v;  // ||(I + lambda2 Q) V - (Y - Z)||_F
};
NoisyKktResiduals kkt_residuals_noisy(const CMatrix& Y, const CMatrix& Z, const CMatrix& V,
                                      double lambda1, double lambda2, double mu);

}  // namespace lr2sd
