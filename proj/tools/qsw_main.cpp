#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsw/case_studies.hpp"
#include "qsw/io.hpp"
#include "qsw/version.hpp"
#include "qsw/walk.hpp"

namespace {

using namespace qsw;

std::vector<long long> parse_params(const std::string& spec,
                                    const std::string& name,
                                    std::size_t expected) {
  const std::string body = spec.substr(name.size() + 1);
  std::vector<long long> params;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      params.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("malformed parameter '" + tok + "' in graph spec '" +
                            spec + "'");
    }
  }
  if (params.size() != expected) {
    throw ValidationError("graph spec '" + spec + "' expects " +
                          std::to_string(expected) + " parameter(s)");
  }
  return params;
}

bool has_prefix(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix + ":", 0) == 0;
}

Graph generate_graph(const std::string& spec, std::uint64_t seed) {
  if (has_prefix(spec, "line")) {
    return line_graph(parse_params(spec, "line", 1)[0]);
  }
  if (has_prefix(spec, "cayley")) {
    const auto p = parse_params(spec, "cayley", 2);
    return cayley_tree(p[0], p[1]);
  }
  if (has_prefix(spec, "glued")) {
    return glued_binary_tree(parse_params(spec, "glued", 1)[0]);
  }
  if (has_prefix(spec, "rglued")) {
    return random_glued_binary_tree(parse_params(spec, "rglued", 1)[0], seed);
  }
  if (has_prefix(spec, "er")) {
    const auto p = parse_params(spec, "er", 2);
    return erdos_renyi(p[0], p[1], seed);
  }
  throw ValidationError("unknown graph generator '" + spec + "'");
}

bool is_generator_spec(const std::string& spec) {
  for (const char* name : {"line", "cayley", "glued", "rglued", "er"}) {
    if (has_prefix(spec, name)) return true;
  }
  return false;
}

Graph load_graph(const std::string& source, std::uint64_t seed) {
  if (is_generator_spec(source)) return generate_graph(source, seed);
  std::ifstream probe(source);
  if (!probe) throw IoError("cannot open graph file " + source);
  std::string first;
  std::getline(probe, first);
  probe.close();
  if (first.rfind("%%MatrixMarket", 0) == 0 ||
      first.rfind("%%matrixmarket", 0) == 0) {
    return read_matrix_market(source);
  }
  return read_edge_list(source);
}

// 0 means the uniform initial state.
Index parse_init(const std::string& init, Index n) {
  if (init == "uniform") return 0;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(init, &used);
    if (used == init.size() && v >= 1 && v <= n) return static_cast<Index>(v);
  } catch (const std::exception&) {
  }
  throw ValidationError("--init must be 'uniform' or a vertex in 1.." +
                        std::to_string(n));
}

ExpmOptions expm_options(std::optional<Index> dense_limit_flag) {
  ExpmOptions opts;
  if (dense_limit_flag) {
    opts.dense_limit = *dense_limit_flag;
  } else if (const char* env = std::getenv("QSW_DENSE_LIMIT")) {
    try {
      opts.dense_limit = std::stoll(env);
    } catch (const std::exception&) {
      throw ValidationError("QSW_DENSE_LIMIT is not an integer");
    }
  }
  return opts;
}

struct StepPlan {
  double dt = 0.0;
  int steps = 0;  // 0: only the initial state is reported (t = 0)
};

StepPlan plan_steps(double t, std::optional<double> dt,
                    std::optional<int> steps) {
  if (t < 0.0) throw ValidationError("--t must be nonnegative");
  if (t == 0.0) return {0.0, 0};
  if (dt) {
    if (!(*dt > 0.0)) throw ValidationError("--dt must be positive");
    const double ratio = t / *dt;
    const int n = static_cast<int>(std::llround(ratio));
    if (n < 1 || std::abs(n * *dt - t) > 1e-9 * std::max(1.0, t)) {
      throw ValidationError("--t must be a positive integer multiple of --dt");
    }
    return {*dt, n};
  }
  if (steps) {
    if (*steps < 1) throw ValidationError("--steps must be >= 1");
    return {t / *steps, *steps};
  }
  return {t, 1};
}

struct WalkRequest {
  std::string kind;  // crw | qw | qsw
  std::optional<Graph> graph;
  std::string graph_source;
  double gamma = 1.0;
  std::optional<double> omega;
  std::optional<double> alpha;
  double t = 0.0;
  StepPlan plan;
  double tol = 1e-8;
  std::string lindblad = "canonical";
  std::string init = "1";
  std::optional<std::uint64_t> seed;
  ExpmOptions opts;
};

LindbladSet build_lindblad_set(const WalkRequest& req) {
  const Graph& graph = *req.graph;
  const Index n = graph.order();
  if (req.lindblad == "canonical") {
    return lindblad_set(generator_matrix(graph, req.gamma).m);
  }
  if (req.lindblad == "dephasing") {
    return dephasing_set(n);
  }
  if (req.lindblad == "google") {
    if (!req.alpha) {
      throw ValidationError("--alpha is required for --lindblad google");
    }
    const GoogleMatrix g = google_matrix(graph, *req.alpha);
    return lindblad_set(MatrixXd(req.gamma * g.g));
  }
  if (has_prefix(req.lindblad, "matrix")) {
    const std::string path = req.lindblad.substr(std::string("matrix:").size());
    const SparseMatrixXd m = read_matrix_market_matrix(path);
    if (m.rows() != n) {
      throw ValidationError("Lindblad matrix dimension " +
                            std::to_string(m.rows()) +
                            " does not match graph order " + std::to_string(n));
    }
    return lindblad_set(m);
  }
  throw ValidationError("unknown --lindblad kind '" + req.lindblad + "'");
}

WalkResult initial_only(WalkKind kind, const VectorXd& populations) {
  WalkResult result;
  result.kind = kind;
  result.times = {0.0};
  result.populations.resize(1, populations.size());
  result.populations.row(0) = populations;
  return result;
}

WalkResult run_walk(const WalkRequest& req) {
  const Graph& graph = *req.graph;
  const Index n = graph.order();
  const Index init = parse_init(req.init, n);
  if (req.kind == "crw") {
    VectorXd p0 = init == 0 ? VectorXd::Constant(n, 1.0 / n).eval()
                            : VectorXd::Unit(n, init - 1).eval();
    const GeneratorMatrix gen = generator_matrix(graph, req.gamma);
    if (req.plan.steps == 0) return initial_only(WalkKind::Classical, p0);
    return walk_series(gen, p0, req.plan.dt, req.plan.steps, req.tol, req.opts);
  }
  if (req.kind == "qw") {
    VectorXcd psi0 =
        init == 0
            ? VectorXcd::Constant(n, Complex(1.0 / std::sqrt(double(n)))).eval()
            : VectorXcd::Unit(n, init - 1).eval();
    const Hamiltonian h = graph_hamiltonian(graph, req.gamma);
    if (req.plan.steps == 0) {
      return initial_only(WalkKind::Quantum, psi0.cwiseAbs2());
    }
    return walk_series(h, psi0, req.plan.dt, req.plan.steps, req.tol, req.opts);
  }
  if (req.kind == "qsw") {
    if (!req.omega) throw ValidationError("--omega is required for --kind qsw");
    const DensityMatrix rho0 = init == 0 ? DensityMatrix::maximally_mixed(n)
                                         : DensityMatrix::pure(n, init);
    const Hamiltonian h = graph_hamiltonian(graph, req.gamma);
    const LindbladSet lk = build_lindblad_set(req);
    const Superoperator sup = assemble_superoperator(h, lk, *req.omega);
    if (req.plan.steps == 0) {
      WalkResult result = initial_only(WalkKind::Stochastic, rho0.populations());
      result.states = {rho0.matrix()};
      return result;
    }
    return walk_series(sup, rho0, req.plan.dt, req.plan.steps, req.tol,
                       req.opts);
  }
  throw ValidationError("--kind must be one of crw, qw, qsw");
}

RunMetadata metadata_for(const WalkRequest& req) {
  RunMetadata meta;
  meta.walk_kind = req.kind;
  meta.graph_source = req.graph_source;
  meta.lindblad_kind = req.kind == "qsw" ? req.lindblad : "";
  meta.gamma = req.gamma;
  meta.omega = req.omega;
  meta.alpha = req.alpha;
  meta.t = req.t;
  meta.dt = req.plan.dt;
  meta.steps = req.plan.steps;
  meta.tol = req.tol;
  meta.seed = req.seed;
  meta.init = req.init;
  meta.tool_version = kVersion;
  return meta;
}

std::string fmt_value(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_example(const std::string& name, WalkRequest req,
                const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  if (name == "line" || name == "dephasing") {
    req.kind = "qsw";
    req.graph = line_graph(51);
    req.graph_source = "line:51";
    req.lindblad = name == "dephasing" ? "dephasing" : "canonical";
    if (req.init.empty()) req.init = "26";
    if (req.t == 0.0) req.t = 10.0;
    req.plan = plan_steps(req.t, req.plan.dt > 0 ? std::optional(req.plan.dt)
                                                 : std::optional(0.1),
                          std::nullopt);
    std::vector<double> sweep = req.omega
                                    ? std::vector<double>{*req.omega}
                                    : std::vector<double>{0.0, 0.1, 0.5, 1.0};
    std::ostringstream combined;
    combined << "omega,t,vertex,population\n";
    for (double omega : sweep) {
      WalkRequest one = req;
      one.omega = omega;
      const WalkResult result = run_walk(one);
      const fs::path out =
          out_dir / (name + "_omega" + fmt_value(omega) + ".csv");
      write_populations(result, out, metadata_for(one));
      std::cout << out.string() << "\n";
      for (std::size_t r = 0; r < result.times.size(); ++r) {
        for (Index i = 0; i < result.populations.cols(); ++i) {
          combined << fmt_value(omega) << "," << fmt17(result.times[r]) << ","
                   << (i + 1) << ","
                   << fmt17(result.populations(static_cast<Index>(r), i))
                   << "\n";
        }
      }
    }
    const fs::path combined_path = out_dir / (name + "_combined.csv");
    write_text_file(combined_path, combined.str());
    std::cout << combined_path.string() << "\n";
    return 0;
  }
  if (name == "fmo") {
    if (!req.omega) req.omega = 0.1;
    if (!req.alpha) req.alpha = 100.0;
    if (req.init.empty()) req.init = "6";
    if (req.t == 0.0) req.t = 2.0;
    req.plan = plan_steps(req.t, req.plan.dt > 0 ? std::optional(req.plan.dt)
                                                 : std::optional(0.05),
                          std::nullopt);
    const Hamiltonian h = fmo_hamiltonian();
    const LindbladSet lk = fmo_lindblad_set(req.gamma, *req.alpha);
    const Superoperator sup = assemble_superoperator(h, lk, *req.omega);
    const Index fmo_init = parse_init(req.init, 8);
    const DensityMatrix rho0 = fmo_init == 0
                                   ? DensityMatrix::maximally_mixed(8)
                                   : DensityMatrix::pure(8, fmo_init);
    const WalkResult result =
        walk_series(sup, rho0, req.plan.dt, req.plan.steps, req.tol, req.opts);
    req.kind = "qsw";
    req.graph_source = "fmo (bundled 8-site model)";
    req.lindblad = "canonical+sink";
    const fs::path out = out_dir / "fmo.csv";
    write_populations(result, out, metadata_for(req));
    std::cout << out.string() << "\n";
    return 0;
  }
  if (name == "pagerank") {
    if (!req.omega) req.omega = 0.8;
    if (!req.alpha) req.alpha = 0.85;
    if (req.init.empty()) req.init = "uniform";
    if (req.t == 0.0) req.t = 100.0;
    req.kind = "qsw";
    req.graph = pagerank_example_graph();
    req.graph_source = "pagerank (bundled reconstruction)";
    req.lindblad = "google";
    req.plan = plan_steps(req.t, req.plan.dt > 0 ? std::optional(req.plan.dt)
                                                 : std::optional(10.0),
                          std::nullopt);
    const WalkResult result = run_walk(req);
    const fs::path out = out_dir / "pagerank.csv";
    write_populations(result, out, metadata_for(req));
    std::cout << out.string() << "\n";
    // quantum vs classical ranks side by side
    const VectorXd qpr =
        result.populations.row(result.populations.rows() - 1).transpose();
    const VectorXd cpr =
        classical_pagerank(google_matrix(*req.graph, *req.alpha));
    std::ostringstream ranks;
    ranks << "vertex,qpr,cpr\n";
    for (Index i = 0; i < qpr.size(); ++i) {
      ranks << (i + 1) << "," << fmt17(qpr(i)) << "," << fmt17(cpr(i)) << "\n";
    }
    const fs::path ranks_path = out_dir / "pagerank_ranks.csv";
    write_text_file(ranks_path, ranks.str());
    std::cout << ranks_path.string() << "\n";
    return 0;
  }
  throw ValidationError("unknown example '" + name +
                        "' (expected line, dephasing, fmo, or pagerank)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical, quantum, and quantum stochastic walks on graphs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // walk
  auto* walk = app.add_subcommand("walk", "Propagate a single walk");
  std::string kind, graph_source, lindblad = "canonical", init = "1";
  std::string out = "walk.csv", states_out;
  double gamma = 1.0, t = 0.0, tol = 1e-8;
  std::optional<double> omega, alpha, dt;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  std::optional<Index> dense_limit;
  walk->add_option("--kind", kind, "crw, qw, or qsw")->required();
  walk->add_option("--graph", graph_source,
                   "edge-list/MatrixMarket file or generator spec "
                   "(line:N, cayley:D,N, glued:N, rglued:N, er:N,M)")
      ->required();
  walk->add_option("--gamma", gamma, "transition rate");
  walk->add_option("--omega", omega, "coherent/incoherent weight (qsw only)");
  walk->add_option("--alpha", alpha, "damping factor (google Lindblads)");
  walk->add_option("--t", t, "propagation time")->required();
  walk->add_option("--dt", dt, "sampling interval");
  walk->add_option("--steps", steps, "number of sampling steps");
  walk->add_option("--tol", tol, "matrix exponential tolerance");
  walk->add_option("--seed", seed, "seed for generated graphs");
  walk->add_option("--init", init, "initial vertex or 'uniform'");
  walk->add_option("--lindblad", lindblad,
                   "canonical, dephasing, google, or matrix:FILE (qsw only)");
  walk->add_option("--out", out, "populations CSV path");
  walk->add_option("--states-out", states_out,
                   "also dump density matrices as t,i,j,re,im (qsw only)");
  walk->add_option("--dense-limit", dense_limit,
                   "dense matrix-exponential fallback limit "
                   "(QSW_DENSE_LIMIT env var)");

  // example
  auto* example = app.add_subcommand("example", "Run a bundled case study");
  std::string example_name, example_out_dir = ".", example_init;
  double ex_gamma = 1.0, ex_t = 0.0, ex_tol = 1e-8;
  std::optional<double> ex_omega, ex_alpha, ex_dt;
  std::optional<Index> ex_dense_limit;
  example->add_option("name", example_name, "line, dephasing, fmo, pagerank")
      ->required();
  example->add_option("--gamma", ex_gamma, "transition rate");
  example->add_option("--omega", ex_omega, "override omega (disables sweeps)");
  example->add_option("--alpha", ex_alpha, "override alpha");
  example->add_option("--t", ex_t, "override propagation time");
  example->add_option("--dt", ex_dt, "override sampling interval");
  example->add_option("--tol", ex_tol, "matrix exponential tolerance");
  example->add_option("--init", example_init, "initial vertex or 'uniform'");
  example->add_option("--out-dir", example_out_dir, "output directory");
  example->add_option("--dense-limit", ex_dense_limit,
                      "dense matrix-exponential fallback limit");

  // graph gen
  auto* graph_cmd = app.add_subcommand("graph", "Graph utilities");
  auto* gen = graph_cmd->add_subcommand("gen", "Write a generated graph");
  std::string gen_spec, gen_out = "graph.edges";
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("spec", gen_spec,
                  "line:N, cayley:D,N, glued:N, rglued:N, or er:N,M")
      ->required();
  gen->add_option("--out", gen_out, "output edge-list path");
  gen->add_option("--seed", gen_seed, "seed for randomized generators");
  graph_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);

    if (*walk) {
      if (kind != "qsw") {
        if (omega) throw ValidationError("--omega only applies to --kind qsw");
        if (lindblad != "canonical") {
          throw ValidationError("--lindblad only applies to --kind qsw");
        }
      }
      if (alpha && lindblad != "google") {
        throw ValidationError("--alpha requires --lindblad google");
      }
      WalkRequest req{.kind = kind,
                      .graph = load_graph(graph_source, seed.value_or(0)),
                      .graph_source = graph_source,
                      .gamma = gamma,
                      .omega = omega,
                      .alpha = alpha,
                      .t = t,
                      .plan = plan_steps(t, dt, steps),
                      .tol = tol,
                      .lindblad = lindblad,
                      .init = init,
                      .seed = seed,
                      .opts = expm_options(dense_limit)};
      const WalkResult result = run_walk(req);
      write_populations(result, out, metadata_for(req));
      std::cout << out << "\n";
      if (!states_out.empty()) {
        write_states(result, states_out);
        std::cout << states_out << "\n";
      }
      return 0;
    }
    if (*example) {
      WalkRequest req;
      req.gamma = ex_gamma;
      req.omega = ex_omega;
      req.alpha = ex_alpha;
      req.t = ex_t;
      req.plan.dt = ex_dt.value_or(0.0);
      req.tol = ex_tol;
      req.init = example_init;
      req.opts = expm_options(ex_dense_limit);
      return run_example(example_name, std::move(req), example_out_dir);
    }
    if (*gen) {
      write_edge_list(generate_graph(gen_spec, gen_seed.value_or(0)), gen_out);
      std::cout << gen_out << "\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
