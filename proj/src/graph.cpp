#include "qsw/graph.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "qsw/linalg.hpp"

namespace qsw {

namespace {

void check_vertex_count(Index n) {
  if (n < 1) throw ValidationError("graph must have at least one vertex");
}

void check_edge(const Edge& e, Index n) {
  if (e.src < 1 || e.src > n || e.dst < 1 || e.dst > n) {
    throw ValidationError("edge endpoint out of range 1.." + std::to_string(n));
  }
  if (!(e.weight > 0.0)) {
    throw ValidationError("edge weights must be strictly positive");
  }
}

// Unbiased bounded draw; fixed algorithm so seeds reproduce across platforms.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<Index> random_permutation(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Index> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = i;
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(bounded(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace

Graph::Graph(Index n, SparseMatrixXd adjacency, bool directed)
    : n_(n), adjacency_(std::move(adjacency)), directed_(directed) {}

Graph Graph::directed(Index n, std::span<const Edge> edges) {
  check_vertex_count(n);
  std::set<std::pair<Index, Index>> seen;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size());
  for (const Edge& e : edges) {
    check_edge(e, n);
    if (!seen.insert({e.src, e.dst}).second) {
      throw ValidationError("duplicate edge " + std::to_string(e.src) + " -> " +
                            std::to_string(e.dst));
    }
    triplets.emplace_back(e.dst - 1, e.src - 1, e.weight);
  }
  return Graph(n, make_sparse_real(n, n, triplets), true);
}

Graph Graph::undirected(Index n, std::span<const Edge> edges) {
  check_vertex_count(n);
  std::set<std::pair<Index, Index>> seen;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    check_edge(e, n);
    const auto key = std::minmax(e.src, e.dst);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate edge {" + std::to_string(e.src) + ", " +
                            std::to_string(e.dst) + "}");
    }
    triplets.emplace_back(e.dst - 1, e.src - 1, e.weight);
    if (e.src != e.dst) {
      triplets.emplace_back(e.src - 1, e.dst - 1, e.weight);
    }
  }
  return Graph(n, make_sparse_real(n, n, triplets), false);
}

Graph Graph::from_adjacency(SparseMatrixXd a, bool directed) {
  if (a.rows() != a.cols()) {
    throw ValidationError("adjacency matrix must be square");
  }
  check_vertex_count(a.rows());
  a.prune([](Index, Index, double v) { return v != 0.0; });
  a.makeCompressed();
  for (Index j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrixXd::InnerIterator it(a, j); it; ++it) {
      if (!(it.value() > 0.0)) {
        throw ValidationError("adjacency weights must be strictly positive");
      }
      if (!directed && a.coeff(it.col(), it.row()) != it.value()) {
        throw ValidationError(
            "adjacency of an undirected graph must be symmetric");
      }
    }
  }
  const Index n = a.rows();
  return Graph(n, std::move(a), directed);
}

double Graph::out_degree(Index j) const {
  if (j < 1 || j > n_) {
    throw ValidationError("vertex index " + std::to_string(j) +
                          " out of range 1.." + std::to_string(n_));
  }
  double sum = 0.0;
  for (SparseMatrixXd::InnerIterator it(adjacency_, j - 1); it; ++it) {
    if (it.row() != j - 1) sum += it.value();
  }
  return sum;
}

Graph symmetrize(const Graph& g) {
  const SparseMatrixXd& a = g.adjacency();
  std::map<std::pair<Index, Index>, double> merged;
  for (Index j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrixXd::InnerIterator it(a, j); it; ++it) {
      auto& fwd = merged[{it.row(), it.col()}];
      fwd = std::max(fwd, it.value());
      auto& rev = merged[{it.col(), it.row()}];
      rev = std::max(rev, it.value());
    }
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(merged.size());
  for (const auto& [coord, w] : merged) {
    triplets.emplace_back(coord.first, coord.second, w);
  }
  return Graph::from_adjacency(make_sparse_real(g.order(), g.order(), triplets),
                               false);
}

Graph line_graph(Index n) {
  check_vertex_count(n);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Index i = 1; i < n; ++i) {
    edges.push_back({i, i + 1, 1.0});
  }
  return Graph::undirected(n, edges);
}

Graph cayley_tree(Index d, Index n) {
  if (d < 3) throw ValidationError("cayley_tree: order d must be >= 3");
  if (n < 0) throw ValidationError("cayley_tree: generations must be >= 0");
  std::vector<Edge> edges;
  Index next = 1;  // root
  std::vector<Index> frontier{1};
  for (Index gen = 1; gen <= n; ++gen) {
    const Index children = (gen == 1) ? d : d - 1;
    std::vector<Index> next_frontier;
    for (Index parent : frontier) {
      for (Index c = 0; c < children; ++c) {
        ++next;
        edges.push_back({parent, next, 1.0});
        next_frontier.push_back(next);
      }
    }
    frontier = std::move(next_frontier);
  }
  return Graph::undirected(next, edges);
}

namespace {

Graph glued_binary_tree_impl(Index n, const std::vector<Index>& leaf_order) {
  if (n < 1) throw ValidationError("glued_binary_tree: n must be >= 1");
  const Index tree = (Index{1} << (n + 1)) - 1;  // vertices per tree
  const Index leaves = Index{1} << n;
  std::vector<Edge> edges;
  edges.reserve(2 * (tree - 1) + leaves);
  // heap numbering: children of i are 2i and 2i+1
  for (Index i = 2; i <= tree; ++i) {
    edges.push_back({i / 2, i, 1.0});
    edges.push_back({tree + i / 2, tree + i, 1.0});
  }
  // leaves are ids 2^n .. 2^(n+1)-1 within each tree
  for (Index k = 0; k < leaves; ++k) {
    edges.push_back({leaves + k, tree + leaves + leaf_order[k], 1.0});
  }
  return Graph::undirected(2 * tree, edges);
}

}  // namespace

Graph glued_binary_tree(Index n) {
  if (n < 1) throw ValidationError("glued_binary_tree: n must be >= 1");
  std::vector<Index> order(Index{1} << n);
  for (Index k = 0; k < static_cast<Index>(order.size()); ++k) order[k] = k;
  return glued_binary_tree_impl(n, order);
}

Graph random_glued_binary_tree(Index n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_glued_binary_tree: n must be >= 1");
  return glued_binary_tree_impl(n, random_permutation(Index{1} << n, seed));
}

Graph erdos_renyi(Index n, Index m, std::uint64_t seed) {
  check_vertex_count(n);
  if (m < 0 || m > n * (n - 1)) {
    throw ValidationError(
        "erdos_renyi: edge count must be within 0..n(n-1) for simple directed "
        "graphs");
  }
  std::mt19937_64 rng(seed);
  std::set<std::pair<Index, Index>> picked;
  std::vector<Edge> edges;
  edges.reserve(m);
  while (static_cast<Index>(edges.size()) < m) {
    const auto src = static_cast<Index>(bounded(rng, n)) + 1;
    const auto dst = static_cast<Index>(bounded(rng, n)) + 1;
    if (src == dst) continue;
    if (picked.insert({src, dst}).second) {
      edges.push_back({src, dst, 1.0});
    }
  }
  return Graph::directed(n, edges);
}

}  // namespace qsw
