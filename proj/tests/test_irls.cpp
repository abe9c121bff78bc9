#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include "lr2sd/irls.hpp"
#include "lr2sd/prox.hpp"
#include "test_support.hpp"

using namespace lr2sd;
using lr2sd::testing::random_matrix;

namespace {

// Sum of sqrt(sigma^2 + mu^2) over all M eigen-directions of Z Z^H, from an
// SVD rather than an eigendecomposition.
double nuclear_oracle(const CMatrix& Z, double mu) {
  Eigen::JacobiSVD<CMatrix> svd(Z);
  const RVector s = svd.singularValues();
  double total = 0.0;
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    const double sigma = i < s.size() ? s(i) : 0.0;
    total += std::sqrt(sigma * sigma + mu * mu);
  }
  return total;
}

bool non_increasing(const std::vector<double>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (trace[k] > trace[k - 1] * (1.0 + 1e-9)) return false;
  return true;
}

}  // namespace

TEST_CASE("weight_p closed forms") {
  SUBCASE("zero matrix") {
    const CMatrix P = weight_p(CMatrix::Zero(3, 5), 0.5);
    CHECK((P - 2.0 * CMatrix::Identity(3, 3)).norm() < 1e-14);
  }
  SUBCASE("diagonal case") {
    CMatrix Z = CMatrix::Zero(2, 2);
    Z(0, 0) = 2.0;
    const CMatrix P = weight_p(Z, 1.0);
    CHECK(std::abs(P(0, 0) - 1.0 / std::sqrt(5.0)) < 1e-14);
    CHECK(std::abs(P(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(P(0, 1)) < 1e-14);
    CHECK(std::abs(P(1, 0)) < 1e-14);
  }
  SUBCASE("negative mu behaves as |mu|") {
    Rng rng(2);
    const CMatrix Z = random_matrix(rng, 3, 4);
    CHECK((weight_p(Z, -0.3) - weight_p(Z, 0.3)).norm() < 1e-13);
  }
}

TEST_CASE("weight_p is the inverse square root") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix Z = random_matrix(rng, 4, 8);
    const double mu = 0.01;
    const CMatrix P = weight_p(Z, mu);
    const CMatrix G = Z * Z.adjoint() + mu * mu * CMatrix::Identity(4, 4);
    CHECK((P * G * P - CMatrix::Identity(4, 4)).norm() <= 1e-10);
    CHECK((P - P.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("weight_p with mu = 0") {
  Rng rng(3);
  const CMatrix full = random_matrix(rng, 3, 6);
  const CMatrix P = weight_p(full, 0.0);
  CHECK((P * full * full.adjoint() * P - CMatrix::Identity(3, 3)).norm() < 1e-10);
  CMatrix deficient = full;
  deficient.row(2) = deficient.row(0);
  CHECK_THROWS_AS(weight_p(deficient, 0.0), SolverError);
}

TEST_CASE("weight_q closed forms") {
  const RVector q0 = weight_q(CMatrix::Zero(4, 3), 0.25);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(q0(i) == doctest::Approx(4.0).epsilon(1e-15));

  CMatrix V = CMatrix::Zero(2, 3);
  V(0, 0) = Complex(2.0, 2.0);  // 8
  V(0, 1) = Complex(4.0, 0.0);  // 16, squared row norm 24
  const RVector q = weight_q(V, 1.0);
  CHECK(q(0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(q(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("smoothed norms") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix Z = random_matrix(rng, 5, trial % 2 ? 3 : 7);
    const double mu = 0.1 * (trial + 1);
    CHECK(smoothed_nuclear_norm(Z, mu) == doctest::Approx(nuclear_oracle(Z, mu)).epsilon(1e-12));
    double l21 = 0.0;
    for (Eigen::Index i = 0; i < Z.rows(); ++i) l21 += std::sqrt(Z.row(i).squaredNorm() + mu * mu);
    CHECK(smoothed_l21_norm(Z, mu) == doctest::Approx(l21).epsilon(1e-14));
  }
}

TEST_CASE("noiseless objective values") {
  SUBCASE("all zero") {
    const CMatrix zero = CMatrix::Zero(3, 5);
    CHECK(objective_noiseless(zero, zero, 2.0, 0.1) == doctest::Approx(0.9).epsilon(1e-14));
  }
  SUBCASE("rank-1 Z = Y with tiny mu approaches the nuclear norm") {
    CVector u(2), v(4);
    u << Complex(0.6, 0.0), Complex(0.0, 0.8);
    v << Complex(0.5, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(-0.5, 0.0);
    const CMatrix Y = 5.0 * u * v.adjoint();
    const double mu = 1e-9;
    CHECK(nuclear_norm(Y) == doctest::Approx(5.0).epsilon(1e-12));
    // The eigenvalue of Z Z^H that should vanish carries rounding of order
    // 1e-15 ||Y||^2, so only about half the digits survive the square root.
    CHECK(objective_noiseless(Y, Y, 2.0, mu) == doctest::Approx(nuclear_norm(Y)).epsilon(1e-6));
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(objective_noiseless(CMatrix::Zero(3, 4), CMatrix::Zero(3, 5), 2.0, 0.1), std::domain_error);
  }
}

TEST_CASE("noisy objective values") {
  const CMatrix zero = CMatrix::Zero(4, 6);
  CHECK(objective_noisy(zero, zero, zero, 2.0, 0.2, 0.01) == doctest::Approx(0.088).epsilon(1e-14));

  Rng rng(8);
  const CMatrix Y = random_matrix(rng, 4, 6);
  const CMatrix Z = random_matrix(rng, 4, 6);
  const double penalties = 2.0 * smoothed_nuclear_norm(Z, 0.01) + 0.2 * smoothed_l21_norm(Y - Z, 0.01);
  CHECK(objective_noisy(Y, Z, Y - Z, 2.0, 0.2, 0.01) == doctest::Approx(penalties).epsilon(1e-14));
  CHECK_THROWS_AS(objective_noisy(Y, Z, CMatrix::Zero(3, 6), 2.0, 0.2, 0.01), std::domain_error);
}

TEST_CASE("objective floors") {
  CHECK(objective_floor_noiseless(9, 2.0, 0.1) == doctest::Approx(0.1 * (3.0 + 18.0)));
  CHECK(objective_floor_noisy(4, 2.0, 0.2, -0.5) == doctest::Approx(0.5 * (4.0 + 0.8)));
}

TEST_CASE("parameter validation") {
  IrlsParams p;
  CHECK_NOTHROW(p.validate());
  SUBCASE("mu zero") { p.mu = 0.0; }
  SUBCASE("epsilon zero") { p.epsilon = 0.0; }
  SUBCASE("k_max zero") { p.k_max = 0; }
  SUBCASE("negative lambda") { p.lambda = -1.0; }
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("zero observation is a fixed point") {
  const CMatrix Y = CMatrix::Zero(5, 7);
  const SolveResult a = irls_noiseless(Y, IrlsParams{});
  CHECK(a.Z_hat.norm() == 0.0);
  CHECK(a.iterations == 1);
  CHECK(a.termination == Termination::tolerance_reached);
  const SolveResult b = irls_noisy(Y, IrlsParams{});
  CHECK(b.Z_hat.norm() == 0.0);
  CHECK(b.V_hat.norm() == 0.0);
  CHECK(b.iterations == 1);
}

TEST_CASE("objective traces are monotone and bounded below") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene s = synthesize_scene(testing::reference_scene(seed));
    const IrlsParams p;
    CAPTURE(seed);
    const SolveResult a = irls_noiseless(s.Y, p);
    const SolveResult b = irls_noisy(s.Y, p);
    CHECK(non_increasing(a.objective_trace));
    CHECK(non_increasing(b.objective_trace));
    CHECK(a.objective_trace.size() == static_cast<std::size_t>(a.iterations) + 1);
    const double floor_a = objective_floor_noiseless(10, p.lambda, p.mu);
    const double floor_b = objective_floor_noisy(10, p.lambda1, p.lambda2, p.mu);
    for (double f : a.objective_trace) CHECK(f >= floor_a);
    for (double f : b.objective_trace) CHECK(f >= floor_b);
    CHECK(a.objective_trace.back() == doctest::Approx(objective_noiseless(s.Y, a.Z_hat, p.lambda, p.mu)));
    CHECK(b.objective_trace.back() ==
          doctest::Approx(objective_noisy(s.Y, b.Z_hat, b.V_hat, p.lambda1, p.lambda2, p.mu)));
  }
}

TEST_CASE("monotonicity holds for other smoothing constants") {
  for (double mu : {1e-6, 0.3, -1.0}) {
    const Scene s = synthesize_scene(testing::reference_scene(21, 50, 5.0));
    IrlsParams p;
    p.mu = mu;
    p.k_max = 200;
    CAPTURE(mu);
    CHECK(non_increasing(irls_noiseless(s.Y, p).objective_trace));
    CHECK(non_increasing(irls_noisy(s.Y, p).objective_trace));
  }
}

TEST_CASE("stationarity and iterate convergence at termination") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Scene s = synthesize_scene(testing::reference_scene(seed));
    const IrlsParams p;
    const double scale = s.Y.norm();
    CAPTURE(seed);

    const SolveResult b = irls_noisy(s.Y, p);
    if (b.termination == Termination::tolerance_reached) {
      const NoisyKktResiduals r = kkt_residuals_noisy(s.Y, b.Z_hat, b.V_hat, p.lambda1, p.lambda2, p.mu);
      CHECK(r.z <= 1e-6 * scale);
      CHECK(r.v <= 1e-6 * scale);
      CHECK(b.last_step_z <= 1e-6 * scale);
      CHECK(b.last_step_v <= 1e-6 * scale);
    }
    const SolveResult a = irls_noiseless(s.Y, p);
    if (a.termination == Termination::tolerance_reached) {
      CHECK(kkt_residual_noiseless(s.Y, a.Z_hat, p.lambda, p.mu) <= 1e-6 * scale);
      CHECK(a.last_step_z <= 1e-6 * scale);
    }
  }
}

TEST_CASE("k_max and trace recording") {
  const Scene s = synthesize_scene(testing::reference_scene(1));
  IrlsParams p;
  p.k_max = 3;
  const SolveResult full = irls_noisy(s.Y, p);
  CHECK(full.iterations == 3);
  CHECK(full.termination == Termination::k_max_reached);
  CHECK(full.objective_trace.size() == 4);
  p.record_trace = false;
  const SolveResult compact = irls_noisy(s.Y, p);
  REQUIRE(compact.objective_trace.size() == 2);
  CHECK(compact.objective_trace.front() == full.objective_trace.front());
  CHECK(compact.objective_trace.back() == full.objective_trace.back());
  CHECK(compact.Z_hat == full.Z_hat);
}

TEST_CASE("row-norm concavity inequality") {
  // ||Y||_2,1 - ||X||_2,1 >= 1/2 trace(H (Y Y^H - X X^H)), H = diag(1/||Y_i||).
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix X = random_matrix(rng, 5, 4, 0.1 + trial * 0.05);
    const CMatrix Yp = random_matrix(rng, 5, 4);
    RVector h = Yp.rowwise().norm().cwiseInverse();
    const double rhs = 0.5 * (h.asDiagonal() * (Yp * Yp.adjoint() - X * X.adjoint())).trace().real();
    CHECK(l21_norm(Yp) - l21_norm(X) >= rhs - 1e-9);
  }
}
