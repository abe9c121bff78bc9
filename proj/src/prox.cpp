#include "lr2sd/prox.hpp"

#include <algorithm>
#include <cmath>

namespace lr2sd {

namespace {

void require_positive(double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("shrinkage threshold kappa must be positive");
}

}  // namespace

double nuclear_norm(const CMatrix& X) {
  if (X.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(X);
  return svd.singularValues().sum();
}

double l21_norm(const CMatrix& X) { return X.rowwise().norm().sum(); }

namespace detail {

Shrunk svd_shrink_with_norm(const CMatrix& C, double kappa) {
  require_positive(kappa);
  if (C.size() == 0) return {C, 0.0};
  Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sigma = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < sigma.size() && sigma(keep) > kappa) ++keep;
  if (keep == 0) return {CMatrix::Zero(C.rows(), C.cols()), 0.0};
  const RVector shrunk = sigma.head(keep).array() - kappa;
  CMatrix out = svd.matrixU().leftCols(keep) * shrunk.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  return {std::move(out), shrunk.sum()};
}

Shrunk row_shrink_with_norm(const CMatrix& C, double kappa) {
  require_positive(kappa);
  CMatrix out = CMatrix::Zero(C.rows(), C.cols());
  double total = 0.0;
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    const double norm = C.row(i).norm();
    if (norm > kappa) {
      out.row(i) = C.row(i) * ((norm - kappa) / norm);
      total += norm - kappa;
    }
  }
  return {std::move(out), total};
}

}  // namespace detail

CMatrix svd_shrink(const CMatrix& C, double kappa) { return detail::svd_shrink_with_norm(C, kappa).value; }

CMatrix row_shrink(const CMatrix& C, double kappa) { return detail::row_shrink_with_norm(C, kappa).value; }

double composite_objective(const CMatrix& Y, const CMatrix& Z, const CMatrix& V, double lambda1,
                           double lambda2) {
  return 0.5 * (Y - Z - V).squaredNorm() + lambda1 * nuclear_norm(Z) + lambda2 * l21_norm(V);
}

}  // namespace lr2sd
