#include "qsw/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qsw/linalg.hpp"

namespace qsw {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& what) {
  throw IoError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct MmHeader {
  bool symmetric = false;
  bool pattern = false;
  Index rows = 0, cols = 0;
  long long entries = 0;
  int data_line = 0;  // line number where entries start
};

MmHeader read_mm_header(std::ifstream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix") {
    parse_fail(path, 1, "not a Matrix Market file");
  }
  if (format != "coordinate") {
    parse_fail(path, 1, "only coordinate-format Matrix Market files are supported");
  }
  if (field == "complex") {
    parse_fail(path, 1, "complex-valued Matrix Market files are not supported");
  }
  if (field != "real" && field != "integer" && field != "pattern") {
    parse_fail(path, 1, "unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    parse_fail(path, 1, "unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  MmHeader h;
  h.symmetric = symmetry == "symmetric";
  h.pattern = field == "pattern";
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream sizes(line);
    if (!(sizes >> h.rows >> h.cols >> h.entries)) {
      parse_fail(path, lineno, "malformed size line");
    }
    h.data_line = lineno;
    return h;
  }
  parse_fail(path, lineno, "missing size line");
}

std::vector<Eigen::Triplet<double>> read_mm_entries(
    std::ifstream& in, const MmHeader& h, const std::filesystem::path& path,
    bool require_positive) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(h.entries * (h.symmetric ? 2 : 1));
  std::set<std::pair<Index, Index>> seen;
  std::string line;
  int lineno = h.data_line;
  long long count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    Index r = 0, c = 0;
    double v = 1.0;
    if (!(row >> r >> c)) parse_fail(path, lineno, "malformed entry");
    if (!h.pattern && !(row >> v)) parse_fail(path, lineno, "missing value");
    if (r < 1 || r > h.rows || c < 1 || c > h.cols) {
      parse_fail(path, lineno, "entry index out of range");
    }
    if (require_positive && !(v > 0.0)) {
      parse_fail(path, lineno, "graph weights must be strictly positive");
    }
    if (!seen.insert({r, c}).second) parse_fail(path, lineno, "duplicate entry");
    if (h.symmetric && r != c && !seen.insert({c, r}).second) {
      parse_fail(path, lineno, "duplicate entry after symmetric expansion");
    }
    triplets.emplace_back(r - 1, c - 1, v);
    if (h.symmetric && r != c) triplets.emplace_back(c - 1, r - 1, v);
    ++count;
  }
  if (count != h.entries) {
    parse_fail(path, lineno,
               "expected " + std::to_string(h.entries) + " entries, found " +
                   std::to_string(count));
  }
  return triplets;
}

}  // namespace

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot move " + tmp.string() + " to " + path.string() +
                  ": " + ec.message());
  }
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Edge> edges;
  std::set<std::pair<Index, Index>> seen;
  Index declared = 0;
  Index max_index = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream header(line.substr(first + 1));
      std::string word;
      header >> word;
      if (word == "vertices") {
        if (!(header >> declared) || declared < 1) {
          parse_fail(path, lineno, "malformed vertices header");
        }
      }
      continue;
    }
    std::istringstream row(line);
    Index src = 0, dst = 0;
    double weight = 1.0;
    if (!(row >> src >> dst)) parse_fail(path, lineno, "expected 'src dst [weight]'");
    std::string token;
    if (row >> token) {
      std::size_t used = 0;
      try {
        weight = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        parse_fail(path, lineno, "malformed weight '" + token + "'");
      }
      std::string extra;
      if (row >> extra) parse_fail(path, lineno, "unexpected trailing content");
    }
    if (src < 1 || dst < 1) parse_fail(path, lineno, "vertex indices are 1-based");
    if (!(weight > 0.0)) parse_fail(path, lineno, "edge weights must be strictly positive");
    if (!seen.insert({src, dst}).second) {
      parse_fail(path, lineno, "duplicate edge " + std::to_string(src) + " -> " +
                                   std::to_string(dst));
    }
    max_index = std::max({max_index, src, dst});
    edges.push_back({src, dst, weight});
  }
  if (declared == 0 && max_index == 0) {
    throw IoError(path.string() + ": no edges and no vertices header");
  }
  if (declared > 0 && max_index > declared) {
    throw IoError(path.string() + ": vertex index " + std::to_string(max_index) +
                  " exceeds declared count " + std::to_string(declared));
  }
  return Graph::directed(declared > 0 ? declared : max_index, edges);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# vertices " << g.order() << "\n";
  const SparseMatrixXd& a = g.adjacency();
  for (Index j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrixXd::InnerIterator it(a, j); it; ++it) {
      // A(i, j) is the edge j -> i
      out << (j + 1) << " " << (it.row() + 1) << " " << fmt17(it.value())
          << "\n";
    }
  }
  write_text_file(path, out.str());
}

Graph read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const MmHeader h = read_mm_header(in, path);
  if (h.rows != h.cols) {
    throw IoError(path.string() + ": adjacency matrix must be square");
  }
  auto triplets = read_mm_entries(in, h, path, /*require_positive=*/true);
  return Graph::from_adjacency(make_sparse_real(h.rows, h.cols, triplets),
                               /*directed=*/!h.symmetric);
}

SparseMatrixXd read_matrix_market_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const MmHeader h = read_mm_header(in, path);
  auto triplets = read_mm_entries(in, h, path, /*require_positive=*/false);
  return make_sparse_real(h.rows, h.cols, triplets);
}

void write_populations(const WalkResult& result,
                       const std::filesystem::path& path,
                       const RunMetadata& meta) {
  const Index n = result.populations.cols();
  std::ostringstream out;
  out << "t";
  for (Index i = 1; i <= n; ++i) out << ",p" << i;
  out << "\n";
  for (std::size_t row = 0; row < result.times.size(); ++row) {
    out << fmt17(result.times[row]);
    for (Index i = 0; i < n; ++i) {
      out << "," << fmt17(result.populations(static_cast<Index>(row), i));
    }
    out << "\n";
  }
  write_text_file(path, out.str());

  nlohmann::json j;
  j["walk_kind"] = meta.walk_kind;
  j["graph_source"] = meta.graph_source;
  if (!meta.lindblad_kind.empty()) j["lindblad_kind"] = meta.lindblad_kind;
  j["gamma"] = meta.gamma;
  if (meta.omega) j["omega"] = *meta.omega;
  if (meta.alpha) j["alpha"] = *meta.alpha;
  j["t"] = meta.t;
  j["dt"] = meta.dt;
  j["steps"] = meta.steps;
  j["tol"] = meta.tol;
  if (meta.seed) j["seed"] = *meta.seed;
  j["init"] = meta.init;
  j["tool_version"] = meta.tool_version;
  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".json");
  write_text_file(sidecar, j.dump(2) + "\n");
}

PopulationTable read_populations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  const auto columns = std::count(line.begin(), line.end(), ',') + 1;
  if (columns < 2) throw IoError(path.string() + ": malformed header");
  const Index n = columns - 1;
  PopulationTable table;
  std::vector<VectorXd> rows;
  int lineno = 1;
  const auto parse_double = [&](const std::string& cell, int at) {
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used == cell.size()) return v;
    } catch (const std::exception&) {
    }
    parse_fail(path, at, "malformed number '" + cell + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    VectorXd values(n);
    if (!std::getline(row, cell, ',')) parse_fail(path, lineno, "missing time");
    table.times.push_back(parse_double(cell, lineno));
    for (Index i = 0; i < n; ++i) {
      if (!std::getline(row, cell, ',')) {
        parse_fail(path, lineno, "expected " + std::to_string(n) + " populations");
      }
      values(i) = parse_double(cell, lineno);
    }
    rows.push_back(std::move(values));
  }
  table.populations.resize(static_cast<Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    table.populations.row(static_cast<Index>(r)) = rows[r];
  }
  return table;
}

void write_states(const WalkResult& result,
                  const std::filesystem::path& path) {
  if (result.kind != WalkKind::Stochastic) {
    throw ValidationError("write_states: only stochastic walks carry density matrices");
  }
  std::ostringstream out;
  out << "t,i,j,re,im\n";
  for (std::size_t k = 0; k < result.states.size(); ++k) {
    const MatrixXcd& rho = result.states[k];
    for (Index j = 0; j < rho.cols(); ++j) {
      for (Index i = 0; i < rho.rows(); ++i) {
        out << fmt17(result.times[k]) << "," << (i + 1) << "," << (j + 1) << ","
            << fmt17(rho(i, j).real()) << "," << fmt17(rho(i, j).imag()) << "\n";
      }
    }
  }
  write_text_file(path, out.str());
}

}  // namespace qsw
