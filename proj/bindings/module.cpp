#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qsw/case_studies.hpp"
#include "qsw/io.hpp"
#include "qsw/linalg.hpp"
#include "qsw/version.hpp"
#include "qsw/walk.hpp"

namespace py = pybind11;
using namespace qsw;

namespace {

ExpmOptions make_options(Index dense_limit, int krylov_dim) {
  ExpmOptions opts;
  opts.dense_limit = dense_limit;
  opts.krylov_dim = krylov_dim;
  return opts;
}

LindbladSet lindblad_vector(const std::vector<LindbladOperator>& ops) {
  return ops;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Continuous-time classical, quantum, and quantum stochastic walks on "
      "weighted directed graphs";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("order", &Graph::order)
      .def_property_readonly("directed", &Graph::is_directed)
      .def_property_readonly(
          "adjacency", [](const Graph& g) { return g.adjacency(); },
          "Sparse adjacency with A[i, j] the weight of edge j -> i")
      .def("out_degree", &Graph::out_degree, py::arg("vertex"),
           "Weighted out-degree of a 1-based vertex, self-loops excluded")
      .def("__repr__", [](const Graph& g) {
        return "<Graph order=" + std::to_string(g.order()) +
               (g.is_directed() ? " directed>" : " undirected>");
      });

  m.def(
      "graph_from_edges",
      [](Index n, const std::vector<std::tuple<Index, Index, double>>& edges,
         bool directed) {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (const auto& [src, dst, w] : edges) es.push_back({src, dst, w});
        return directed ? Graph::directed(n, es) : Graph::undirected(n, es);
      },
      py::arg("n"), py::arg("edges"), py::arg("directed") = true,
      "Build a graph from (src, dst, weight) triples with 1-based vertices");
  m.def(
      "graph_from_adjacency",
      [](const SparseMatrixXd& a, bool directed) {
        return Graph::from_adjacency(a, directed);
      },
      py::arg("adjacency"), py::arg("directed") = true);
  m.def("symmetrize", &symmetrize, py::arg("graph"));
  m.def("line_graph", &line_graph, py::arg("n"));
  m.def("cayley_tree", &cayley_tree, py::arg("degree"), py::arg("generations"));
  m.def("glued_binary_tree", &glued_binary_tree, py::arg("n"));
  m.def("random_glued_binary_tree", &random_glued_binary_tree, py::arg("n"),
        py::arg("seed"));
  m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("edges"),
        py::arg("seed"));

  py::class_<GeneratorMatrix>(m, "GeneratorMatrix")
      .def_property_readonly("matrix",
                             [](const GeneratorMatrix& g) { return g.m; })
      .def_readonly("gamma", &GeneratorMatrix::gamma)
      .def_property_readonly("dim", &GeneratorMatrix::dim);
  m.def("generator_matrix", &generator_matrix, py::arg("graph"),
        py::arg("gamma"));

  py::class_<Hamiltonian>(m, "Hamiltonian")
      .def(py::init<SparseMatrixXd>(), py::arg("matrix"))
      .def_property_readonly("matrix", &Hamiltonian::matrix)
      .def_property_readonly("dim", &Hamiltonian::dim);
  m.def("graph_hamiltonian", &graph_hamiltonian, py::arg("graph"),
        py::arg("gamma"));

  py::class_<LindbladOperator>(m, "LindbladOperator")
      .def_static("rank_one", &LindbladOperator::rank_one, py::arg("dim"),
                  py::arg("row"), py::arg("col"), py::arg("amplitude"))
      .def_static("general", &LindbladOperator::general, py::arg("matrix"))
      .def_property_readonly("is_rank_one", &LindbladOperator::is_rank_one)
      .def_property_readonly(
          "rank_one_form",
          [](const LindbladOperator& op) -> py::object {
            if (!op.rank_one_form()) return py::none();
            const auto& ro = *op.rank_one_form();
            return py::make_tuple(ro.row, ro.col, ro.amplitude);
          },
          "(row, col, amplitude) for rank-one channels, None otherwise")
      .def_property_readonly("matrix", &LindbladOperator::matrix)
      .def_property_readonly("dim", &LindbladOperator::dim);

  m.def("lindblad_set",
        py::overload_cast<const SparseMatrixXd&>(&lindblad_set),
        py::arg("matrix"),
        "One rank-one channel sqrt(|m_ij|)|i><j| per nonzero entry");
  m.def("lindblad_set_dense", py::overload_cast<const MatrixXd&>(&lindblad_set),
        py::arg("matrix"));
  m.def("dephasing_set", &dephasing_set, py::arg("n"));

  py::class_<GoogleMatrix>(m, "GoogleMatrix")
      .def_property_readonly("matrix",
                             [](const GoogleMatrix& g) { return g.g; })
      .def_readonly("alpha", &GoogleMatrix::alpha)
      .def_property_readonly("dim", &GoogleMatrix::dim);
  m.def("google_matrix", &google_matrix, py::arg("graph"), py::arg("alpha"));

  m.def(
      "kron",
      [](const SparseMatrixXcd& a, const SparseMatrixXcd& b) {
        return kron(a, b);
      },
      py::arg("a"), py::arg("b"));
  m.def("vectorize", &vectorize, py::arg("matrix"));
  m.def("matricize", &matricize, py::arg("vector"));
  m.def("dense_expm", &dense_expm, py::arg("matrix"),
        py::arg("max_dim") = Index{256});
  m.def(
      "expm_multiply",
      [](const SparseMatrixXcd& a, const VectorXcd& v, double t, double tol,
         Index dense_limit, int krylov_dim) {
        return expm_multiply(a, v, t, tol,
                             make_options(dense_limit, krylov_dim));
      },
      py::arg("a"), py::arg("v"), py::arg("t"), py::arg("tol") = 1e-8,
      py::arg("dense_limit") = Index{256}, py::arg("krylov_dim") = 30,
      "w ~ exp(a*t) v without forming the exponential above dense_limit");

  py::class_<Superoperator>(m, "Superoperator")
      .def_property_readonly("matrix",
                             [](const Superoperator& s) { return s.l; })
      .def_readonly("omega", &Superoperator::omega)
      .def_readonly("n", &Superoperator::n);
  m.def(
      "assemble_superoperator",
      [](const Hamiltonian& h, const std::vector<LindbladOperator>& lk,
         double omega) {
        return assemble_superoperator(h, lindblad_vector(lk), omega);
      },
      py::arg("hamiltonian"), py::arg("lindblad_ops"), py::arg("omega"));

  m.def(
      "quantum_stochastic_walk",
      [](const Hamiltonian& h, const std::vector<LindbladOperator>& lk,
         double omega, const MatrixXcd& rho0, double t, double tol,
         Index dense_limit, int krylov_dim) {
        return quantum_stochastic_walk(h, lindblad_vector(lk), omega,
                                       DensityMatrix(rho0), t, tol,
                                       make_options(dense_limit, krylov_dim))
            .matrix();
      },
      py::arg("hamiltonian"), py::arg("lindblad_ops"), py::arg("omega"),
      py::arg("rho0"), py::arg("t"), py::arg("tol") = 1e-8,
      py::arg("dense_limit") = Index{256}, py::arg("krylov_dim") = 30,
      "Density matrix at time t under the vectorized master equation");
  m.def(
      "quantum_walk",
      [](const Hamiltonian& h, const VectorXcd& psi0, double t, double tol,
         Index dense_limit, int krylov_dim) {
        return quantum_walk(h, psi0, t, tol,
                            make_options(dense_limit, krylov_dim));
      },
      py::arg("hamiltonian"), py::arg("psi0"), py::arg("t"),
      py::arg("tol") = 1e-8, py::arg("dense_limit") = Index{256},
      py::arg("krylov_dim") = 30);
  m.def(
      "classical_random_walk",
      [](const GeneratorMatrix& gen, const VectorXd& p0, double t, double tol,
         Index dense_limit, int krylov_dim) {
        return classical_random_walk(gen, p0, t, tol,
                                     make_options(dense_limit, krylov_dim));
      },
      py::arg("generator"), py::arg("p0"), py::arg("t"), py::arg("tol") = 1e-8,
      py::arg("dense_limit") = Index{256}, py::arg("krylov_dim") = 30);

  py::class_<WalkResult>(m, "WalkResult")
      .def_readonly("times", &WalkResult::times)
      .def_readonly("populations", &WalkResult::populations)
      .def_readonly("states", &WalkResult::states);
  m.def(
      "walk_series",
      [](const Hamiltonian& h, const std::vector<LindbladOperator>& lk,
         double omega, const MatrixXcd& rho0, double dt, int steps, double tol,
         Index dense_limit, int krylov_dim) {
        const Superoperator sup =
            assemble_superoperator(h, lindblad_vector(lk), omega);
        return walk_series(sup, DensityMatrix(rho0), dt, steps, tol,
                           make_options(dense_limit, krylov_dim));
      },
      py::arg("hamiltonian"), py::arg("lindblad_ops"), py::arg("omega"),
      py::arg("rho0"), py::arg("dt"), py::arg("steps"), py::arg("tol") = 1e-8,
      py::arg("dense_limit") = Index{256}, py::arg("krylov_dim") = 30,
      "Sample the walk on the grid t = 0, dt, ..., steps*dt; the "
      "superoperator is assembled once");
  m.def(
      "stationary_state",
      [](const Hamiltonian& h, const std::vector<LindbladOperator>& lk,
         double omega, const MatrixXcd& rho0, double dt, double eps,
         int max_steps, double tol, Index dense_limit, int krylov_dim) {
        const Superoperator sup =
            assemble_superoperator(h, lindblad_vector(lk), omega);
        const StationaryResult result =
            stationary_state(sup, DensityMatrix(rho0), dt, eps, max_steps, tol,
                             make_options(dense_limit, krylov_dim));
        return py::make_tuple(result.state.matrix(), result.converged,
                              result.steps_used);
      },
      py::arg("hamiltonian"), py::arg("lindblad_ops"), py::arg("omega"),
      py::arg("rho0"), py::arg("dt"), py::arg("eps"),
      py::arg("max_steps") = 1000, py::arg("tol") = 1e-8,
      py::arg("dense_limit") = Index{256}, py::arg("krylov_dim") = 30,
      "(rho, converged, steps_used) once the per-step population change "
      "drops below eps");

  m.def("fmo_hamiltonian", &fmo_hamiltonian);
  m.def("fmo_lindblad_set", &fmo_lindblad_set, py::arg("gamma"),
        py::arg("alpha"));
  m.def("pagerank_example_graph", &pagerank_example_graph);
  m.def("classical_pagerank", &classical_pagerank, py::arg("google_matrix"),
        py::arg("tol") = 1e-14, py::arg("max_iters") = 200000);

  m.def("read_edge_list", &read_edge_list, py::arg("path"));
  m.def("read_matrix_market", &read_matrix_market, py::arg("path"));
  m.def("read_matrix_market_matrix", &read_matrix_market_matrix,
        py::arg("path"));
  m.def("write_edge_list", &write_edge_list, py::arg("graph"), py::arg("path"));

#ifdef QSW_VERSION_INFO
  m.attr("__version__") = QSW_VERSION_INFO;
#else
  m.attr("__version__") = kVersion;
#endif
}
