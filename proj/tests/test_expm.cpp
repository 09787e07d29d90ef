#include <doctest.h>

#include <random>

#include "qsw/expm.hpp"
#include "qsw/linalg.hpp"
#include "test_support.hpp"

using namespace qsw;
using test::random_dense;
using test::random_sparse;
using test::taylor_expm;

namespace {

// force the Arnoldi path even at small dimensions
ExpmOptions krylov_only() {
  ExpmOptions opts;
  opts.dense_limit = 0;
  return opts;
}

}  // namespace

TEST_CASE("exp(0) acts as the identity") {
  std::mt19937_64 rng(1);
  const VectorXcd v = random_dense(rng, 12, 1);
  SparseMatrixXcd zero(12, 12);
  CHECK(expm_multiply(zero, v, 3.7) == v);
  const SparseMatrixXcd a = random_sparse(rng, 12, 0.3);
  CHECK(expm_multiply(a, v, 0.0) == v);
}

TEST_CASE("scalar exponential") {
  std::vector<Eigen::Triplet<Complex>> t;
  t.emplace_back(0, 0, Complex(-1.0));
  const SparseMatrixXcd a = make_sparse(1, 1, t);
  VectorXcd v(1);
  v << 1.0;
  for (const auto& opts : {ExpmOptions{}, krylov_only()}) {
    const VectorXcd w = expm_multiply(a, v, 1.0, 1e-12, opts);
    CHECK(std::abs(w(0) - Complex(0.36787944117144233)) < 1e-12);
  }
}

TEST_CASE("random sparse action matches the Taylor oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseMatrixXcd a = random_sparse(rng, 6, 0.5);
    const VectorXcd v = random_dense(rng, 6, 1);
    const VectorXcd w = expm_multiply(a, v, 2.0, 1e-10, krylov_only());
    const VectorXcd exact = taylor_expm(MatrixXcd(a) * 2.0) * v;
    CHECK((w - exact).norm() < 1e-10 * exact.norm());
  }
}

TEST_CASE("krylov matches dense_expm for dims up to 64") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Index> dims(1, 64);
  std::uniform_real_distribution<double> times(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = dims(rng);
    const SparseMatrixXcd a = random_sparse(rng, n, 0.4);
    const VectorXcd v = random_dense(rng, n, 1);
    double t = times(rng);
    if (t == 0.0) t = 1.0;
    const double tol = 1e-10;
    const VectorXcd w = expm_multiply(a, v, t, tol, krylov_only());
    const VectorXcd exact = dense_expm(MatrixXcd(a) * t) * v;
    CHECK((w - exact).norm() <= tol * std::max(exact.norm(), v.norm()));
  }
}

TEST_CASE("semigroup property") {
  std::mt19937_64 rng(31);
  const SparseMatrixXcd a = random_sparse(rng, 40, 0.1);
  const VectorXcd v = random_dense(rng, 40, 1);
  const double tol = 1e-10;
  const VectorXcd two_hops = expm_multiply(
      a, expm_multiply(a, v, 0.7, tol, krylov_only()), 1.3, tol, krylov_only());
  const VectorXcd direct = expm_multiply(a, v, 2.0, tol, krylov_only());
  CHECK((two_hops - direct).norm() < 10 * tol * direct.norm());
}

TEST_CASE("skew-Hermitian action preserves the 2-norm") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    SparseMatrixXcd a = random_sparse(rng, 64, 0.15);
    const SparseMatrixXcd skew =
        SparseMatrixXcd(0.5 * (a - SparseMatrixXcd(a.adjoint())));
    VectorXcd v = random_dense(rng, 64, 1);
    v /= v.norm();
    const VectorXcd w = expm_multiply(skew, v, 3.0, 1e-12, krylov_only());
    CHECK(std::abs(w.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("dense fallback and krylov agree") {
  std::mt19937_64 rng(41);
  const SparseMatrixXcd a = random_sparse(rng, 40, 0.2);
  const VectorXcd v = random_dense(rng, 40, 1);
  const VectorXcd dense = expm_multiply(a, v, 1.5, 1e-10);  // 40 <= 256
  const VectorXcd krylov = expm_multiply(a, v, 1.5, 1e-10, krylov_only());
  CHECK((dense - krylov).norm() < 1e-9 * dense.norm());
}

TEST_CASE("input validation") {
  std::mt19937_64 rng(3);
  const SparseMatrixXcd a = random_sparse(rng, 4, 0.5);
  const VectorXcd v = random_dense(rng, 5, 1);
  CHECK_THROWS_AS((void)expm_multiply(a, v, 1.0), ValidationError);
  const VectorXcd v4 = random_dense(rng, 4, 1);
  CHECK_THROWS_AS((void)expm_multiply(a, v4, 1.0, 0.0), ValidationError);
  SparseMatrixXcd rect(3, 4);
  CHECK_THROWS_AS((void)expm_multiply(rect, v4, 1.0), ValidationError);
}

TEST_CASE("exhausting the sub-step budget reports the residual") {
  std::mt19937_64 rng(5);
  const SparseMatrixXcd a = random_sparse(rng, 48, 0.5);
  const VectorXcd v = random_dense(rng, 48, 1);
  ExpmOptions opts = krylov_only();
  opts.max_substeps = 1;
  CHECK_THROWS_WITH_AS(
      (void)expm_multiply(SparseMatrixXcd(a * Complex(50.0)), v, 10.0, 1e-12,
                          opts),
      doctest::Contains("sub-steps"), NumericalError);
}

TEST_CASE("zero vector stays zero") {
  std::mt19937_64 rng(6);
  const SparseMatrixXcd a = random_sparse(rng, 10, 0.4);
  const VectorXcd w =
      expm_multiply(a, VectorXcd::Zero(10), 2.0, 1e-10, krylov_only());
  CHECK(w.norm() == 0.0);
}
