#pragma once

#include <vector>

#include "qsw/types.hpp"

namespace qsw {

/// Largest matrix dimension the sparse kernels will produce. Kronecker
/// products whose result would exceed this throw ValidationError.
inline constexpr Index kMaxDim = 1 << 28;

/// Build a canonical sparse matrix from triplets: duplicate coordinates are
/// summed, entries that sum to zero are dropped.
SparseMatrixXcd make_sparse(Index rows, Index cols,
                            std::vector<Eigen::Triplet<Complex>>& triplets);
SparseMatrixXd make_sparse_real(Index rows, Index cols,
                                std::vector<Eigen::Triplet<double>>& triplets);

SparseMatrixXcd to_complex(const SparseMatrixXd& m);

/// Kronecker (direct) product. nnz(result) = nnz(a) * nnz(b).
SparseMatrixXcd kron(const SparseMatrixXcd& a, const SparseMatrixXcd& b);

/// Column-major flattening of a square matrix: out[(j-1)*N + i] = m(i, j)
/// in 1-based terms.
VectorXcd vectorize(const MatrixXcd& m);

/// Inverse of vectorize. The length of vec must be an integer squared.
MatrixXcd matricize(const VectorXcd& v);

/// Dense matrix exponential (scaling-and-squaring), guarded by a dimension
/// limit so it is never applied to superoperator-sized matrices by accident.
MatrixXcd dense_expm(const MatrixXcd& a, Index max_dim = 256);

/// Max absolute column sum (the induced 1-norm).
double one_norm(const SparseMatrixXcd& m);

}  // namespace qsw
