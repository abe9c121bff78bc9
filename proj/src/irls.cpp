#include "lr2sd/irls.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "solver_support.hpp"

namespace lr2sd {

void IrlsParams::validate() const {
  if (!(lambda > 0.0) || !(lambda1 > 0.0) || !(lambda2 > 0.0))
    throw std::domain_error("IRLS weights lambda, lambda1, lambda2 must be positive");
  if (mu == 0.0 || !std::isfinite(mu)) throw std::domain_error("smoothing parameter mu must be nonzero");
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
  if (k_max < 1) throw std::domain_error("k_max must be at least 1");
}

GramEigen smoothed_gram_eigen(const CMatrix& Z, double mu) {
  // Only the lower triangle is formed; the eigensolver reads no more.
  CMatrix gram = CMatrix::Zero(Z.rows(), Z.rows());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(Z);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram);
  if (solver.info() != Eigen::Success) throw SolverError("Hermitian eigendecomposition failed");
  const double mu2 = mu * mu;
  GramEigen out{solver.eigenvectors(), solver.eigenvalues()};
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    out.values(i) = std::max(out.values(i) + mu2, 1e-3 * mu2);
  return out;
}

namespace {

CMatrix inverse_sqrt(const GramEigen& ge) {
  const RVector scale = ge.values.cwiseSqrt().cwiseInverse();
  return ge.vectors * scale.asDiagonal() * ge.vectors.adjoint();
}

double trace_sqrt(const GramEigen& ge) { return ge.values.cwiseSqrt().sum(); }

double l21_smoothed_rows(const RVector& row_sq, double mu) {
  return (row_sq.array() + mu * mu).sqrt().sum();
}

RVector q_from_rows(const RVector& row_sq, double mu) {
  return (row_sq.array() + mu * mu).rsqrt().matrix();
}

}  // namespace

CMatrix weight_p(const CMatrix& Z, double mu) {
  GramEigen ge = smoothed_gram_eigen(Z, mu);
  if (mu == 0.0) {
    const double top = ge.values.size() > 0 ? ge.values.maxCoeff() : 0.0;
    const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(Z.size()) * top;
    if (ge.values.minCoeff() <= tol)
      throw SolverError("Z Z^H is singular and mu = 0: inverse square root undefined");
  }
  return inverse_sqrt(ge);
}

RVector weight_q(const CMatrix& V, double mu) { return q_from_rows(row_norms_squared(V), mu); }

double smoothed_nuclear_norm(const CMatrix& Z, double mu) { return trace_sqrt(smoothed_gram_eigen(Z, mu)); }

double smoothed_l21_norm(const CMatrix& V, double mu) { return l21_smoothed_rows(row_norms_squared(V), mu); }

double objective_noiseless(const CMatrix& Y, const CMatrix& Z, double lambda, double mu) {
  if (Y.rows() != Z.rows() || Y.cols() != Z.cols()) throw std::domain_error("shape mismatch");
  return smoothed_nuclear_norm(Z, mu) + lambda * smoothed_l21_norm(Y - Z, mu);
}

double objective_noisy(const CMatrix& Y, const CMatrix& Z, const CMatrix& V, double lambda1,
                       double lambda2, double mu) {
  if (Y.rows() != Z.rows() || Y.cols() != Z.cols() || Y.rows() != V.rows() || Y.cols() != V.cols())
    throw std::domain_error("shape mismatch");
  return 0.5 * (Y - Z - V).squaredNorm() + lambda1 * smoothed_nuclear_norm(Z, mu) +
         lambda2 * smoothed_l21_norm(V, mu);
}

double objective_floor_noiseless(int num_sensors, double lambda, double mu) {
  const double M = num_sensors;
  return std::abs(mu) * (std::sqrt(M) + lambda * M);
}

double objective_floor_noisy(int num_sensors, double lambda1, double lambda2, double mu) {
  const double M = num_sensors;
  return std::abs(mu) * (lambda1 * std::sqrt(M) + lambda2 * M);
}

SolveResult irls_noiseless(const CMatrix& Y, const IrlsParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const double lambda = params.lambda;
  const double mu = params.mu;

  SolveResult result;
  detail::TraceRecorder trace(params.record_trace);
  CMatrix Z = CMatrix::Zero(Y.rows(), Y.cols());
  GramEigen ge = smoothed_gram_eigen(Z, mu);
  double f_prev = trace_sqrt(ge) + lambda * l21_smoothed_rows(row_norms_squared(Y), mu);
  trace.push(f_prev);

  int k = 0;
  while (true) {
    ++k;
    const RVector q = q_from_rows(row_norms_squared(Y - Z), mu);
    CMatrix system = inverse_sqrt(ge);
    system.diagonal() += lambda * q.cast<Complex>();
    const CMatrix rhs = (lambda * q).asDiagonal() * Y;
    Eigen::LLT<CMatrix> llt(system);
    if (llt.info() != Eigen::Success) throw SolverError("P + lambda Q is not numerically positive definite");
    CMatrix Z_next = llt.solve(rhs);
    if (!Z_next.allFinite()) throw SolverError("noiseless IRLS update produced non-finite values");

    result.last_step_z = (Z_next - Z).norm();
    result.last_step_v = result.last_step_z;
    Z = std::move(Z_next);
    ge = smoothed_gram_eigen(Z, mu);
    const double f = trace_sqrt(ge) + lambda * l21_smoothed_rows(row_norms_squared(Y - Z), mu);
    trace.push(f);

    if (detail::relative_change_converged(f_prev, f, params.epsilon)) {
      result.termination = Termination::tolerance_reached;
      break;
    }
    if (k >= params.k_max) {
      result.termination = Termination::k_max_reached;
      break;
    }
    f_prev = f;
  }

  result.V_hat = Y - Z;
  result.Z_hat = std::move(Z);
  result.iterations = k;
  result.objective_trace = trace.take();
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult irls_noisy(const CMatrix& Y, const IrlsParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const double lambda1 = params.lambda1;
  const double lambda2 = params.lambda2;
  const double mu = params.mu;

  SolveResult result;
  detail::TraceRecorder trace(params.record_trace);
  CMatrix Z = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix V = CMatrix::Zero(Y.rows(), Y.cols());
  GramEigen ge = smoothed_gram_eigen(Z, mu);
  RVector v_rows = RVector::Zero(Y.rows());
  double f_prev = 0.5 * Y.squaredNorm() + lambda1 * trace_sqrt(ge) + lambda2 * l21_smoothed_rows(v_rows, mu);
  trace.push(f_prev);

  int k = 0;
  while (true) {
    ++k;
    // (I + lambda1 P)^(-1) shares P's eigenvectors: eigenvalue sqrt(s) / (sqrt(s) + lambda1).
    // It is assembled as an M x M matrix so only one product with an M x T
    // matrix is needed.
    const RVector root = ge.values.cwiseSqrt();
    const RVector z_gain = root.array() / (root.array() + lambda1);
    const RVector v_gain = (1.0 + lambda2 * q_from_rows(v_rows, mu).array()).inverse();
    const CMatrix z_filter = ge.vectors * z_gain.asDiagonal() * ge.vectors.adjoint();

    CMatrix Z_next(Y.rows(), Y.cols());
    Z_next.noalias() = z_filter * (Y - V);
    CMatrix V_next = v_gain.asDiagonal() * (Y - Z_next);
    if (!Z_next.allFinite() || !V_next.allFinite())
      throw SolverError("noisy IRLS update produced non-finite values");

    result.last_step_z = (Z_next - Z).norm();
    result.last_step_v = (V_next - V).norm();
    Z = std::move(Z_next);
    V = std::move(V_next);
    ge = smoothed_gram_eigen(Z, mu);
    v_rows = row_norms_squared(V);
    const double f = 0.5 * (Y - Z - V).squaredNorm() + lambda1 * trace_sqrt(ge) +
                     lambda2 * l21_smoothed_rows(v_rows, mu);
    trace.push(f);

    if (detail::relative_change_converged(f_prev, f, params.epsilon)) {
      result.termination = Termination::tolerance_reached;
      break;
    }
    if (k >= params.k_max) {
      result.termination = Termination::k_max_reached;
      break;
    }
    f_prev = f;
  }

  result.Z_hat = std::move(Z);
  result.V_hat = std::move(V);
  result.iterations = k;
  result.objective_trace = trace.take();
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double kkt_residual_noiseless(const CMatrix& Y, const CMatrix& Z, double lambda, double mu) {
  const CMatrix P = weight_p(Z, mu);
  const RVector q = weight_q(Y - Z, mu);
  return (P * Z + lambda * q.asDiagonal() * (Z - Y)).norm();
}

NoisyKktResiduals kkt_residuals_noisy(const CMatrix& Y, const CMatrix& Z, const CMatrix& V,
                                      double lambda1, double lambda2, double mu) {
  const CMatrix P = weight_p(Z, mu);
  const RVector q = weight_q(V, mu);
  const CMatrix z_res = Z + lambda1 * (P * Z) - (Y - V);
  const CMatrix v_res = V + lambda2 * (q.asDiagonal() * V) - (Y - Z);
  return {z_res.norm(), v_res.norm()};
}

}  // namespace lr2sd
