#include "lr2sd/baselines.hpp"

#include <chrono>
#include <cmath>

#include "lr2sd/prox.hpp"
#include "solver_support.hpp"

namespace lr2sd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr int kMaxBacktracks = 60;

}  // namespace

void BaselineParams::validate() const {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) throw std::domain_error("lambda1 and lambda2 must be positive");
  if (tau_svt && !(*tau_svt > 0.0)) throw std::domain_error("tau_svt must be positive");
  if (!(step_svt > 0.0)) throw std::domain_error("step_svt must be positive");
  if (!(penalty_admm > 0.0)) throw std::domain_error("penalty_admm must be positive");
  if (step_apg && !(*step_apg > 0.0)) throw std::domain_error("step_apg must be positive");
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
  if (k_max < 1) throw std::domain_error("k_max must be at least 1");
}

double BaselineParams::tau_for(Eigen::Index rows, Eigen::Index cols) const {
  if (tau_svt) return *tau_svt;
  return 5.0 * std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
}

SolveResult svt_solve(const CMatrix& Y, const BaselineParams& params) {
  params.validate();
  const auto start = Clock::now();
  const double tau = params.tau_for(Y.rows(), Y.cols());
  const double row_ratio = params.lambda2 / params.lambda1;

  SolveResult result;
  detail::TraceRecorder trace(params.record_trace);
  CMatrix Z = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix V = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix W = CMatrix::Zero(Y.rows(), Y.cols());
  const double f0 = 0.5 * Y.squaredNorm();
  const double blowup = 1e6 * std::max(f0, 1.0);
  double f_prev = f0;
  trace.push(f0);

  int k = 0;
  while (true) {
    ++k;
    auto z = detail::svd_shrink_with_norm(W, tau);
    auto v = detail::row_shrink_with_norm(W, tau * row_ratio);
    result.last_step_z = (z.value - Z).norm();
    result.last_step_v = (v.value - V).norm();
    Z = std::move(z.value);
    V = std::move(v.value);
    const CMatrix residual = Y - Z - V;
    W += params.step_svt * residual;

    const double f = 0.5 * residual.squaredNorm() + params.lambda1 * z.norm + params.lambda2 * v.norm;
    trace.push(f);
    if (!std::isfinite(f) || f > blowup) throw SolverError("SVT diverged");

    // Until W has grown past both thresholds the iterates stay at zero and
    // the objective cannot move; that is not convergence.
    const bool started = z.norm > 0.0 || v.norm > 0.0;
    if (started && detail::relative_change_converged(f_prev, f, params.epsilon)) {
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
  result.wall_time_s = seconds_since(start);
  return result;
}

SolveResult apg_solve(const CMatrix& Y, const BaselineParams& params) {
  params.validate();
  const auto start = Clock::now();
  const double l1 = params.lambda1;
  const double l2 = params.lambda2;
  // The fidelity gradient with respect to (Z, V) is (-R, -R): Lipschitz 2.
  double step = params.step_apg.value_or(0.5);

  SolveResult result;
  detail::TraceRecorder trace(params.record_trace);
  CMatrix Z = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix V = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix Zy = Z;
  CMatrix Vy = V;
  double t = 1.0;
  double f_prev = 0.5 * Y.squaredNorm();
  trace.push(f_prev);

  struct Candidate {
    CMatrix Z, V;
    double f;
  };
  // Proximal gradient step from (Zy, Vy) with backtracking on the quadratic
  // upper bound of the fidelity term.
  auto prox_step = [&](const CMatrix& Zs, const CMatrix& Vs) -> Candidate {
    const CMatrix R = Y - Zs - Vs;
    for (int attempt = 0; attempt <= kMaxBacktracks; ++attempt) {
      auto z = detail::svd_shrink_with_norm(Zs + step * R, step * l1);
      auto v = detail::row_shrink_with_norm(Vs + step * R, step * l2);
      const CMatrix dZ = z.value - Zs;
      const CMatrix dV = v.value - Vs;
      const double curvature = 0.5 * (dZ + dV).squaredNorm();
      const double bound = (dZ.squaredNorm() + dV.squaredNorm()) / (2.0 * step);
      if (curvature <= bound * (1.0 + 1e-12)) {
        const double f = 0.5 * (Y - z.value - v.value).squaredNorm() + l1 * z.norm + l2 * v.norm;
        return {std::move(z.value), std::move(v.value), f};
      }
      step *= 0.5;
    }
    throw SolverError("APG step-size backtracking exhausted");
  };

  int k = 0;
  while (true) {
    ++k;
    Candidate next = prox_step(Zy, Vy);
    if (next.f > f_prev) {
      // Restart from the last accepted point without momentum.
      t = 1.0;
      next = prox_step(Z, V);
      if (next.f > f_prev) next = {Z, V, f_prev};
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    const CMatrix dZ = next.Z - Z;
    const CMatrix dV = next.V - V;
    Zy = next.Z + momentum * dZ;
    Vy = next.V + momentum * dV;
    t = t_next;
    result.last_step_z = dZ.norm();
    result.last_step_v = dV.norm();
    Z = std::move(next.Z);
    V = std::move(next.V);
    trace.push(next.f);

    if (detail::relative_change_converged(f_prev, next.f, params.epsilon)) {
      result.termination = Termination::tolerance_reached;
      break;
    }
    if (k >= params.k_max) {
      result.termination = Termination::k_max_reached;
      break;
    }
    f_prev = next.f;
  }

  result.Z_hat = std::move(Z);
  result.V_hat = std::move(V);
  result.iterations = k;
  result.objective_trace = trace.take();
  result.wall_time_s = seconds_since(start);
  return result;
}

SolveResult admm_solve(const CMatrix& Y, const BaselineParams& params) {
  params.validate();
  const auto start = Clock::now();
  const double rho = params.penalty_admm;
  const double l1 = params.lambda1;
  const double l2 = params.lambda2;
  const double target = params.epsilon * Y.norm();

  SolveResult result;
  detail::TraceRecorder trace(params.record_trace);
  CMatrix Z = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix V = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix E = CMatrix::Zero(Y.rows(), Y.cols());
  CMatrix W = CMatrix::Zero(Y.rows(), Y.cols());
  trace.push(0.5 * Y.squaredNorm());

  int k = 0;
  while (true) {
    ++k;
    auto z = detail::svd_shrink_with_norm(Y - V - E + W / rho, l1 / rho);
    const CMatrix B = Y - z.value + W / rho;
    // Minimizing over E in closed form leaves a row shrinkage in V with
    // the threshold scaled by (1 + rho) / rho.
    auto v = detail::row_shrink_with_norm(B, l2 * (1.0 + rho) / rho);
    CMatrix E_next = (rho / (1.0 + rho)) * (B - v.value);
    const CMatrix residual = Y - z.value - v.value - E_next;
    W += rho * residual;

    const double primal = residual.norm();
    const double dual = rho * ((v.value + E_next) - (V + E)).norm();
    result.last_step_z = (z.value - Z).norm();
    result.last_step_v = (v.value - V).norm();
    Z = std::move(z.value);
    V = std::move(v.value);
    E = std::move(E_next);
    trace.push(0.5 * (Y - Z - V).squaredNorm() + l1 * z.norm + l2 * v.norm);
    result.residual_trace.push_back(primal);

    if (primal <= target && dual <= target) {
      result.termination = Termination::tolerance_reached;
      break;
    }
    if (k >= params.k_max) {
      result.termination = Termination::k_max_reached;
      break;
    }
  }

  result.Z_hat = std::move(Z);
  result.V_hat = std::move(V);
  result.iterations = k;
  result.objective_trace = trace.take();
  result.wall_time_s = seconds_since(start);
  return result;
}

}  // namespace lr2sd
