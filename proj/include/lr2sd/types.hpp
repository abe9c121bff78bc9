#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lr2sd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Raised when an iterative solver cannot continue (singular system,
// divergence, exhausted step-size search).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Termination { tolerance_reached, k_max_reached };

inline const char* to_string(Termination t) {
  return t == Termination::tolerance_reached ? "tolerance_reached" : "k_max_reached";
}

// Output shared by every decomposition solver.
//
// objective_trace[0] is the objective at the starting point and entry k the
// objective after iteration k. Without record_trace only the first and the
// last values are kept.
struct SolveResult {
  CMatrix Z_hat;
  CMatrix V_hat;
  std::vector<double> objective_trace;
  // Primal residual per iteration (ADMM only).
  std::vector<double> residual_trace;
  int iterations = 0;
  double wall_time_s = 0.0;
  Termination termination = Termination::k_max_reached;
  // Frobenius norms of the final iterate steps.
  double last_step_z = 0.0;
  double last_step_v = 0.0;
};

// Squared l2 norm of every row.
inline RVector row_norms_squared(const CMatrix& X) { return X.rowwise().squaredNorm(); }

}  // namespace lr2sd
