#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsw/types.hpp"

namespace qsw {

/// A weighted edge src -> dst with 1-based endpoints.
struct Edge {
  Index src;
  Index dst;
  double weight = 1.0;
};

/// Weighted (di)graph on vertices 1..N. The adjacency matrix follows the
/// column-as-source convention: A(i, j) > 0 is the weight of edge j -> i.
/// Immutable after construction.
class Graph {
 public:
  static Graph directed(Index n, std::span<const Edge> edges);
  /// Stores each edge {u, v} in both directions. Self-loops are stored once.
  static Graph undirected(Index n, std::span<const Edge> edges);
  /// Validates positivity of stored weights, and symmetry when directed is
  /// false.
  static Graph from_adjacency(SparseMatrixXd a, bool directed);

  Index order() const { return n_; }
  const SparseMatrixXd& adjacency() const { return adjacency_; }
  bool is_directed() const { return directed_; }

  /// Sum of weights of edges leaving vertex j (1-based); self-loops excluded.
  double out_degree(Index j) const;

 private:
  Graph(Index n, SparseMatrixXd adjacency, bool directed);

  Index n_;
  SparseMatrixXd adjacency_;
  bool directed_;
};

/// Undirected graph with A'(i, j) = max(A(i, j), A(j, i)).
Graph symmetrize(const Graph& g);

/// Path graph 1 - 2 - ... - n with unit weights.
Graph line_graph(Index n);

/// Cayley tree of order d >= 3 with n generations: the root has d children,
/// every later internal vertex has d-1, generation n are leaves.
Graph cayley_tree(Index d, Index n);

/// Two complete (n+1)-level binary trees joined leaf-to-leaf in order.
Graph glued_binary_tree(Index n);

/// As glued_binary_tree but with the leaf matching drawn as a uniformly
/// random permutation from a generator seeded by `seed`.
Graph random_glued_binary_tree(Index n, std::uint64_t seed);

/// m distinct directed unit-weight edges (no self-loops) drawn uniformly at
/// random among n vertices.
Graph erdos_renyi(Index n, Index m, std::uint64_t seed);

}  // namespace qsw
