#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qsw/graph.hpp"
#include "qsw/walk.hpp"

namespace qsw {

/// Whitespace-separated "src dst [weight]" lines with 1-based indices and an
/// optional "# vertices N" header; other #-lines are comments.
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

/// Matrix Market coordinate files (real/integer/pattern, general or
/// symmetric). Symmetric files yield undirected graphs; general files yield
/// directed ones. Entry (r, c) is the adjacency entry A(r, c), i.e. edge
/// c -> r.
Graph read_matrix_market(const std::filesystem::path& path);

/// Matrix Market reader without the positive-weight graph constraint, for
/// feeding arbitrary real matrices to lindblad_set.
SparseMatrixXd read_matrix_market_matrix(const std::filesystem::path& path);

/// Everything needed to re-run a walk, persisted as the JSON sidecar.
struct RunMetadata {
  std::string walk_kind;
  std::string graph_source;
  std::string lindblad_kind;
  double gamma = 1.0;
  std::optional<double> omega;
  std::optional<double> alpha;
  double t = 0.0;
  double dt = 0.0;
  int steps = 0;
  double tol = 1e-8;
  std::optional<std::uint64_t> seed;
  std::string init;  // vertex number or "uniform"
  std::string tool_version;
};

/// CSV "t,p1,...,pN" with 17 significant digits plus a ".json" metadata
/// sidecar next to it. Writes are atomic (temp file + rename).
void write_populations(const WalkResult& result,
                       const std::filesystem::path& path,
                       const RunMetadata& meta);

/// Parsed back form of a populations CSV: first column times, rest
/// populations.
struct PopulationTable {
  std::vector<double> times;
  MatrixXd populations;
};
PopulationTable read_populations(const std::filesystem::path& path);

/// Full states as flat CSV rows "t,i,j,re,im" (stochastic walks only).
void write_states(const WalkResult& result, const std::filesystem::path& path);

/// Atomic text write (temp file + rename).
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace qsw
