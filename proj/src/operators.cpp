#include "qsw/operators.hpp"

#include <cmath>
#include <utility>

#include "qsw/linalg.hpp"

namespace qsw {

GeneratorMatrix generator_matrix(const Graph& g, double gamma) {
  if (!(gamma > 0.0)) {
    throw ValidationError("generator_matrix: gamma must be positive");
  }
  const SparseMatrixXd& a = g.adjacency();
  const Index n = g.order();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(a.nonZeros() + n);
  for (Index j = 0; j < n; ++j) {
    for (SparseMatrixXd::InnerIterator it(a, j); it; ++it) {
      if (it.row() == j) continue;  // self-loops carry no probability flow
      triplets.emplace_back(it.row(), j, -gamma * it.value());
    }
    const double out = g.out_degree(j + 1);
    if (out != 0.0) triplets.emplace_back(j, j, gamma * out);
  }
  return {make_sparse_real(n, n, triplets), gamma};
}

Hamiltonian::Hamiltonian(SparseMatrixXd h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) {
    throw ValidationError("hamiltonian matrix must be square");
  }
  h_.prune([](Index, Index, double v) { return v != 0.0; });
  h_.makeCompressed();
  for (Index j = 0; j < h_.outerSize(); ++j) {
    for (SparseMatrixXd::InnerIterator it(h_, j); it; ++it) {
      if (h_.coeff(it.col(), it.row()) != it.value()) {
        throw ValidationError("hamiltonian matrix must be symmetric");
      }
    }
  }
}

Hamiltonian graph_hamiltonian(const Graph& g, double gamma) {
  return Hamiltonian(generator_matrix(symmetrize(g), gamma).m);
}

LindbladOperator LindbladOperator::rank_one(Index dim, Index row, Index col,
                                            double amplitude) {
  if (row < 1 || row > dim || col < 1 || col > dim) {
    throw ValidationError("lindblad operator: vertex labels out of range");
  }
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw ValidationError("lindblad operator: amplitude must be positive");
  }
  LindbladOperator op;
  op.dim_ = dim;
  op.rank_one_ = RankOneOperator{row, col, amplitude};
  return op;
}

LindbladOperator LindbladOperator::general(SparseMatrixXcd m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("lindblad operator: matrix must be square");
  }
  LindbladOperator op;
  op.dim_ = m.rows();
  op.general_ = std::move(m);
  op.general_.prune([](Index, Index, const Complex& v) { return v != Complex(0); });
  op.general_.makeCompressed();
  return op;
}

SparseMatrixXcd LindbladOperator::matrix() const {
  if (!rank_one_) return general_;
  std::vector<Eigen::Triplet<Complex>> t;
  t.emplace_back(rank_one_->row - 1, rank_one_->col - 1,
                 Complex(rank_one_->amplitude));
  return make_sparse(dim_, dim_, t);
}

LindbladSet lindblad_set(const SparseMatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("lindblad_set: matrix must be square");
  }
  LindbladSet ops;
  ops.reserve(m.nonZeros());
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrixXd::InnerIterator it(m, j); it; ++it) {
      if (it.value() == 0.0) continue;
      ops.push_back(LindbladOperator::rank_one(
          m.rows(), it.row() + 1, j + 1, std::sqrt(std::abs(it.value()))));
    }
  }
  return ops;
}

LindbladSet lindblad_set(const MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("lindblad_set: matrix must be square");
  }
  LindbladSet ops;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0.0) continue;
      ops.push_back(LindbladOperator::rank_one(
          m.rows(), i + 1, j + 1, std::sqrt(std::abs(m(i, j)))));
    }
  }
  return ops;
}

LindbladSet dephasing_set(Index n) {
  if (n < 1) throw ValidationError("dephasing_set: n must be >= 1");
  LindbladSet ops;
  ops.reserve(n);
  for (Index k = 1; k <= n; ++k) {
    ops.push_back(LindbladOperator::rank_one(n, k, k, 1.0));
  }
  return ops;
}

GoogleMatrix google_matrix(const Graph& g, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("google_matrix: alpha must be in [0, 1]");
  }
  const Index n = g.order();
  MatrixXd mat(n, n);
  const SparseMatrixXd& a = g.adjacency();
  for (Index j = 0; j < n; ++j) {
    const double out = g.out_degree(j + 1);
    if (out > 0.0) {
      mat.col(j).setConstant((1.0 - alpha) / n);
      for (SparseMatrixXd::InnerIterator it(a, j); it; ++it) {
        if (it.row() == j) continue;  // self-loops carry no rank flow
        mat(it.row(), j) += alpha * it.value() / out;
      }
    } else {
      mat.col(j).setConstant(1.0 / n);
    }
  }
  return {std::move(mat), alpha};
}

}  // namespace qsw
