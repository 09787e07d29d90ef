#pragma once

#include <optional>
#include <vector>

#include "qsw/graph.hpp"
#include "qsw/types.hpp"

namespace qsw {

/// Generator matrix of the classical walk: M(i, j) = -gamma*A(i, j) off the
/// diagonal, M(j, j) = gamma*outDeg(j). Every column sums to zero.
struct GeneratorMatrix {
  SparseMatrixXd m;
  double gamma;
  Index dim() const { return m.rows(); }
};

GeneratorMatrix generator_matrix(const Graph& g, double gamma);

/// Real symmetric Hamiltonian with zero column sums. Construction validates
/// symmetry.
class Hamiltonian {
 public:
  explicit Hamiltonian(SparseMatrixXd h);
  const SparseMatrixXd& matrix() const { return h_; }
  Index dim() const { return h_.rows(); }

 private:
  SparseMatrixXd h_;
};

/// Generator matrix of the symmetrized graph; coincides with
/// generator_matrix(symmetrize(g), gamma).
Hamiltonian graph_hamiltonian(const Graph& g, double gamma);

/// amplitude * |row><col| with 1-based vertex labels: incoherent scattering
/// from vertex col to vertex row.
struct RankOneOperator {
  Index row;
  Index col;
  double amplitude;
};

/// One scattering channel. Canonical channels are rank-one and kept in
/// compact (row, col, amplitude) form; arbitrary sparse matrices are also
/// accepted.
class LindbladOperator {
 public:
  static LindbladOperator rank_one(Index dim, Index row, Index col,
                                   double amplitude);
  static LindbladOperator general(SparseMatrixXcd m);

  bool is_rank_one() const { return rank_one_.has_value(); }
  const std::optional<RankOneOperator>& rank_one_form() const {
    return rank_one_;
  }
  /// Materializes the full sparse matrix.
  SparseMatrixXcd matrix() const;
  Index dim() const { return dim_; }

 private:
  LindbladOperator() = default;
  Index dim_ = 0;
  std::optional<RankOneOperator> rank_one_;
  SparseMatrixXcd general_;
};

using LindbladSet = std::vector<LindbladOperator>;

/// One rank-one operator sqrt(|m(i,j)|) |i><j| per nonzero entry of m,
/// diagonal entries included (they act as dephasing channels). Ordering is
/// column-major over (i, j).
LindbladSet lindblad_set(const SparseMatrixXd& m);
LindbladSet lindblad_set(const MatrixXd& m);

/// n pure-dephasing projectors |k><k|, k = 1..n.
LindbladSet dephasing_set(Index n);

/// Column-stochastic matrix mixing out-degree-normalized adjacency with
/// uniform teleportation; structurally dense.
struct GoogleMatrix {
  MatrixXd g;
  double alpha;
  Index dim() const { return g.rows(); }
};

GoogleMatrix google_matrix(const Graph& g, double alpha);

}  // namespace qsw
