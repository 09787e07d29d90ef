#include <doctest.h>

#include <random>

#include "qsw/linalg.hpp"
#include "test_support.hpp"

using namespace qsw;
using test::dense_kron;
using test::random_dense;
using test::taylor_expm;

namespace {

SparseMatrixXcd sparse_of(const MatrixXcd& m) {
  return m.sparseView().pruned();
}

}  // namespace

TEST_CASE("kron identities") {
  SparseMatrixXcd i2(2, 2);
  i2.setIdentity();
  const SparseMatrixXcd i4 = kron(i2, i2);
  CHECK(i4.rows() == 4);
  CHECK(MatrixXcd(i4).isApprox(MatrixXcd::Identity(4, 4)));

  MatrixXcd a(2, 2);
  a << 0, 1, 0, 0;
  MatrixXcd b(1, 1);
  b << 2;
  const SparseMatrixXcd k = kron(sparse_of(a), sparse_of(b));
  MatrixXcd expected(2, 2);
  expected << 0, 2, 0, 0;
  CHECK(MatrixXcd(k) == expected);
}

TEST_CASE("kron nnz is the product of the factor nnz") {
  std::mt19937_64 rng(11);
  const SparseMatrixXcd a = test::random_sparse(rng, 5, 0.4);
  const SparseMatrixXcd b = test::random_sparse(rng, 4, 0.4);
  CHECK(kron(a, b).nonZeros() == a.nonZeros() * b.nonZeros());
}

TEST_CASE("kron matches vec(A Y B) = (B^T kron A) vec(Y)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXcd a = random_dense(rng, 3, 3);
    const MatrixXcd y = random_dense(rng, 3, 3);
    const MatrixXcd b = random_dense(rng, 3, 3);
    const VectorXcd lhs = vectorize(a * y * b);
    const VectorXcd rhs =
        kron(sparse_of(b.transpose()), sparse_of(a)) * vectorize(y);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("kron associativity and mixed product") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const SparseMatrixXcd a = test::random_sparse(rng, 3, 0.5);
    const SparseMatrixXcd b = test::random_sparse(rng, 2, 0.6);
    const SparseMatrixXcd c = test::random_sparse(rng, 3, 0.5);
    const SparseMatrixXcd d = test::random_sparse(rng, 2, 0.6);
    CHECK(MatrixXcd(kron(kron(a, b), c))
              .isApprox(MatrixXcd(kron(a, kron(b, c))), 1e-14));
    const MatrixXcd lhs = MatrixXcd(SparseMatrixXcd(kron(a, b) * kron(c, d)));
    const MatrixXcd rhs =
        MatrixXcd(kron(SparseMatrixXcd(a * c), SparseMatrixXcd(b * d)));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("kron rejects oversized results") {
  SparseMatrixXcd big(1 << 15, 1 << 15);
  big.setIdentity();
  CHECK_THROWS_AS((void)kron(big, big), ValidationError);
}

TEST_CASE("vectorize concatenates columns") {
  MatrixXcd m(2, 2);
  m << 1, 2, 3, 4;
  const VectorXcd v = vectorize(m);
  CHECK(v(0) == Complex(1));
  CHECK(v(1) == Complex(3));
  CHECK(v(2) == Complex(2));
  CHECK(v(3) == Complex(4));

  const VectorXcd id = vectorize(MatrixXcd::Identity(2, 2));
  CHECK(id(0) == Complex(1));
  CHECK(id(1) == Complex(0));
  CHECK(id(2) == Complex(0));
  CHECK(id(3) == Complex(1));

  CHECK_THROWS_AS((void)vectorize(MatrixXcd::Zero(2, 3)), ValidationError);
}

TEST_CASE("matricize inverts vectorize") {
  VectorXcd v(4);
  v << 1, 3, 2, 4;
  MatrixXcd expected(2, 2);
  expected << 1, 2, 3, 4;
  CHECK(matricize(v) == expected);

  CHECK_THROWS_WITH_AS((void)matricize(VectorXcd::Zero(3)),
                       doctest::Contains("integer squared"), ValidationError);

  std::mt19937_64 rng(3);
  const MatrixXcd m = random_dense(rng, 5, 5);
  CHECK(matricize(vectorize(m)) == m);
  const VectorXcd w = random_dense(rng, 16, 1);
  CHECK(vectorize(matricize(w)) == w);
}

TEST_CASE("dense_expm basics") {
  CHECK(dense_expm(MatrixXcd::Zero(3, 3)).isApprox(MatrixXcd::Identity(3, 3)));

  MatrixXcd nilpotent(2, 2);
  nilpotent << 0, 1, 0, 0;
  MatrixXcd shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK((dense_expm(nilpotent) - shear).cwiseAbs().maxCoeff() < 1e-15);

  const double theta = M_PI / 2.0;
  MatrixXcd gen(2, 2);
  gen << 0, -theta, theta, 0;
  MatrixXcd rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK((dense_expm(gen) - rot).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS((void)dense_expm(MatrixXcd::Zero(3, 3), 2), ValidationError);
}

TEST_CASE("dense_expm agrees with the Taylor oracle") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXcd a = random_dense(rng, 8, 8);
    const MatrixXcd ours = dense_expm(a);
    const MatrixXcd oracle = taylor_expm(a);
    CHECK((ours - oracle).cwiseAbs().maxCoeff() <
          1e-13 * oracle.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("make_sparse sums duplicates and drops zeros") {
  std::vector<Eigen::Triplet<Complex>> t;
  t.emplace_back(0, 0, Complex(1.0));
  t.emplace_back(0, 0, Complex(-1.0));
  t.emplace_back(1, 0, Complex(0.5));
  t.emplace_back(1, 0, Complex(0.25));
  const SparseMatrixXcd m = make_sparse(2, 2, t);
  CHECK(m.nonZeros() == 1);
  CHECK(m.coeff(1, 0) == Complex(0.75));
}
