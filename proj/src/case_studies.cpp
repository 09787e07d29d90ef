#include "qsw/case_studies.hpp"

#include <cmath>

#include "qsw/linalg.hpp"

namespace qsw {

Hamiltonian fmo_hamiltonian() {
  MatrixXd h = MatrixXd::Zero(8, 8);
  h.topLeftCorner(7, 7) << 200.0, -96.0, 5.0, -4.4, 4.7, -12.6, -6.2,  //
      -96.0, 320.0, 33.1, 6.8, 4.5, 7.4, -0.3,                         //
      5.0, 33.1, 0.0, -51.1, 0.8, -8.4, 7.6,                           //
      -4.4, 6.8, -51.1, 110.0, -76.6, -14.2, -67.0,                    //
      4.7, 4.5, 0.8, -76.6, 270.0, 78.3, -0.1,                         //
      -12.6, 7.4, -8.4, -14.2, 78.3, 420.0, 38.3,                      //
      -6.2, -0.3, 7.6, -67.0, -0.1, 38.3, 230.0;
  return Hamiltonian(h.sparseView());
}

LindbladSet fmo_lindblad_set(double gamma, double alpha) {
  if (!(gamma > 0.0)) throw ValidationError("fmo_lindblad_set: gamma must be positive");
  if (!(alpha > 0.0)) throw ValidationError("fmo_lindblad_set: alpha must be positive");
  LindbladSet ops = lindblad_set(fmo_hamiltonian().matrix());
  // absorption into the reaction centre: one-way channel 3 -> 8
  ops.push_back(LindbladOperator::rank_one(8, 8, 3, std::sqrt(alpha * gamma)));
  return ops;
}

Graph pagerank_example_graph() {
  // Directed web-like graph with an exact classical-rank degeneracy:
  // vertices 4, 7 and 8 all have a single in-link from vertex 3, so their
  // classical ranks coincide; vertex 7 links out to the hub (1) while 4 and 8
  // link to 5, which the quantum walk distinguishes.
  const std::vector<Edge> edges{
      {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 4}, {4, 5},
      {5, 6}, {6, 1}, {3, 7}, {3, 8}, {7, 1}, {8, 5},
  };
  return Graph::directed(8, edges);
}

VectorXd classical_pagerank(const GoogleMatrix& g, double tol, int max_iters) {
  const Index n = g.dim();
  VectorXd p = VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int i = 0; i < max_iters; ++i) {
    VectorXd next = g.g * p;
    if ((next - p).cwiseAbs().maxCoeff() < tol) return next;
    p = std::move(next);
  }
  throw NumericalError("classical_pagerank: power iteration did not converge");
}

}  // namespace qsw
