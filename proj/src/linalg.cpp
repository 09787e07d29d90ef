#include "qsw/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace qsw {

namespace {

template <typename Scalar>
Eigen::SparseMatrix<Scalar> build_sparse(
    Index rows, Index cols, std::vector<Eigen::Triplet<Scalar>>& triplets) {
  if (rows < 0 || cols < 0 || rows > kMaxDim || cols > kMaxDim) {
    throw ValidationError("sparse matrix dimensions out of range");
  }
  Eigen::SparseMatrix<Scalar> m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune([](Index, Index, const Scalar& v) { return v != Scalar(0); });
  m.makeCompressed();
  return m;
}

}  // namespace

SparseMatrixXcd make_sparse(Index rows, Index cols,
                            std::vector<Eigen::Triplet<Complex>>& triplets) {
  return build_sparse(rows, cols, triplets);
}

SparseMatrixXd make_sparse_real(Index rows, Index cols,
                                std::vector<Eigen::Triplet<double>>& triplets) {
  return build_sparse(rows, cols, triplets);
}

SparseMatrixXcd to_complex(const SparseMatrixXd& m) {
  return m.cast<Complex>();
}

SparseMatrixXcd kron(const SparseMatrixXcd& a, const SparseMatrixXcd& b) {
  if (a.rows() > kMaxDim / std::max<Index>(b.rows(), 1) ||
      a.cols() > kMaxDim / std::max<Index>(b.cols(), 1)) {
    throw ValidationError("kron: result dimensions exceed the configured maximum");
  }
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros()) *
                   static_cast<std::size_t>(b.nonZeros()));
  for (Index ja = 0; ja < a.outerSize(); ++ja) {
    for (SparseMatrixXcd::InnerIterator ita(a, ja); ita; ++ita) {
      for (Index jb = 0; jb < b.outerSize(); ++jb) {
        for (SparseMatrixXcd::InnerIterator itb(b, jb); itb; ++itb) {
          triplets.emplace_back(ita.row() * b.rows() + itb.row(),
                                ita.col() * b.cols() + itb.col(),
                                ita.value() * itb.value());
        }
      }
    }
  }
  // Distinct (a, b) coordinate pairs land on distinct result coordinates, so
  // nnz is exactly nnz(a)*nnz(b).
  SparseMatrixXcd out(rows, cols);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

VectorXcd vectorize(const MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("vectorize: matrix must be square");
  }
  return Eigen::Map<const VectorXcd>(m.data(), m.size());
}

MatrixXcd matricize(const VectorXcd& v) {
  const auto n = static_cast<Index>(std::llround(std::sqrt(
      static_cast<double>(v.size()))));
  if (n * n != v.size()) {
    throw ValidationError("matricize: length of vec must be an integer squared");
  }
  return Eigen::Map<const MatrixXcd>(v.data(), n, n);
}

MatrixXcd dense_expm(const MatrixXcd& a, Index max_dim) {
  if (a.rows() != a.cols()) {
    throw ValidationError("dense_expm: matrix must be square");
  }
  if (a.rows() > max_dim) {
    throw ValidationError("dense_expm: dimension " + std::to_string(a.rows()) +
                          " exceeds limit " + std::to_string(max_dim));
  }
  return a.exp();
}

double one_norm(const SparseMatrixXcd& m) {
  double norm = 0.0;
  for (Index j = 0; j < m.outerSize(); ++j) {
    double col = 0.0;
    for (SparseMatrixXcd::InnerIterator it(m, j); it; ++it) {
      col += std::abs(it.value());
    }
    norm = std::max(norm, col);
  }
  return norm;
}

}  // namespace qsw
