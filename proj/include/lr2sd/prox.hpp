#pragma once

#include "lr2sd/types.hpp"

namespace lr2sd {

// Sum of singular values.
double nuclear_norm(const CMatrix& X);

// Sum of row l2 norms.
double l21_norm(const CMatrix& X);

/// Singular value shrinkage, the proximal map of kappa * ||.||_*:
/// L * max(Sigma - kappa, 0) * R^H for C = L Sigma R^H.
CMatrix svd_shrink(const CMatrix& C, double kappa);

/// Row-wise group shrinkage, the proximal map of kappa * ||.||_2,1:
/// row_i * max(0, 1 - kappa / ||row_i||), all-zero rows stay zero.
CMatrix row_shrink(const CMatrix& C, double kappa);

/// Unsmoothed noisy objective
///   1/2 ||Y - Z - V||_F^2 + lambda1 ||Z||_* + lambda2 ||V||_2,1.
double composite_objective(const CMatrix& Y, const CMatrix& Z, const CMatrix& V, double lambda1,
                           double lambda2);

namespace detail {

// Shrinkage results paired with the norm of the output, which falls out of
// the same decomposition.
struct Shrunk {
  CMatrix value;
  double norm;
};
Shrunk svd_shrink_with_norm(const CMatrix& C, double kappa);
Shrunk row_shrink_with_norm(const CMatrix& C, double kappa);

}  // namespace detail

}  // namespace lr2sd
