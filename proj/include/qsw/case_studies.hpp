#pragma once

#include "qsw/graph.hpp"
#include "qsw/operators.hpp"
#include "qsw/types.hpp"

namespace qsw {

// Bundled model systems used by the `qsw example` subcommands.

/// 7-site FMO pigment Hamiltonian (site energies and couplings in cm^-1)
/// padded with a zero row/column for the sink vertex 8. With hbar = 1 the
/// matching time unit is 5.309 ps.
Hamiltonian fmo_hamiltonian();

/// Canonical scattering channels built from |H_ij| plus the absorbing-sink
/// channel sqrt(alpha*gamma) |8><3|.
LindbladSet fmo_lindblad_set(double gamma, double alpha);

/// Small directed web graph with an exact classical-rank degeneracy (vertices
/// 4, 7, 8 share the same in-link profile) that the quantum rank lifts.
Graph pagerank_example_graph();

/// Power iteration on the Google matrix; converges to the rank vector.
VectorXd classical_pagerank(const GoogleMatrix& g, double tol = 1e-14,
                            int max_iters = 200000);

}  // namespace qsw
