#pragma once

#include <vector>

#include "qsw/expm.hpp"
#include "qsw/operators.hpp"
#include "qsw/types.hpp"

namespace qsw {

/// Hermitian, trace-one state. Construction validates hermiticity and trace
/// to `tol` (1e-10 for user input; propagators widen it in proportion to the
/// requested integration accuracy). Positivity is an analytic property of the
/// dynamics and is only checked in tests.
class DensityMatrix {
 public:
  explicit DensityMatrix(MatrixXcd rho, double tol = 1e-10);

  /// |q><q| with 1-based vertex q.
  static DensityMatrix pure(Index n, Index q);
  static DensityMatrix maximally_mixed(Index n);

  const MatrixXcd& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }
  /// Real diagonal (vertex populations).
  VectorXd populations() const { return rho_.diagonal().real(); }
  double purity() const;

 private:
  MatrixXcd rho_;
};

/// The vectorized master-equation generator: an N^2 x N^2 sparse matrix with
/// the interpolation weight omega baked in. Assemble once, reuse for any
/// number of propagations.
struct Superoperator {
  SparseMatrixXcd l;
  double omega;
  Index n;  // vertex-space dimension
};

enum class AssemblyRoute {
  /// Closed-form scatter for rank-one channels, Kronecker products otherwise.
  Auto,
  /// Force the term-by-term Kronecker assembly (reference path).
  Kronecker,
};

Superoperator assemble_superoperator(const Hamiltonian& h,
                                     const LindbladSet& lk, double omega,
                                     AssemblyRoute route = AssemblyRoute::Auto);

/// Numerical drift diagnostics of a density-matrix propagation, recorded
/// before any repair is applied.
struct PropagationStats {
  double hermiticity_drift = 0.0;  // max |rho - rho^dagger| before repair
  double trace_drift = 0.0;        // |tr(rho) - 1|
};

/// Propagates rho0 to time t under the master equation. The result is
/// re-hermitized ((rho + rho^dagger)/2); the trace is never renormalized and
/// drift beyond max(1e-8, 10*tol) raises NumericalError.
DensityMatrix quantum_stochastic_walk(const Superoperator& l,
                                      const DensityMatrix& rho0, double t,
                                      double tol = 1e-8,
                                      const ExpmOptions& opts = {},
                                      PropagationStats* stats = nullptr);
DensityMatrix quantum_stochastic_walk(const Hamiltonian& h,
                                      const LindbladSet& lk, double omega,
                                      const DensityMatrix& rho0, double t,
                                      double tol = 1e-8,
                                      const ExpmOptions& opts = {},
                                      PropagationStats* stats = nullptr);

/// exp(-iHt) psi0. Requires a normalized state; preserves the norm to tol.
VectorXcd quantum_walk(const Hamiltonian& h, const VectorXcd& psi0, double t,
                       double tol = 1e-8, const ExpmOptions& opts = {});

/// exp(-Mt) p0 on a probability vector.
VectorXd classical_random_walk(const GeneratorMatrix& gen, const VectorXd& p0,
                               double t, double tol = 1e-8,
                               const ExpmOptions& opts = {});

enum class WalkKind { Classical, Quantum, Stochastic };

/// States sampled on the uniform grid t = 0, dt, ..., steps*dt.
struct WalkResult {
  WalkKind kind;
  std::vector<double> times;
  /// Stochastic walks: the density matrix at each time.
  std::vector<MatrixXcd> states;
  /// Classical/quantum walks: the probability/amplitude vector at each time.
  std::vector<VectorXcd> vectors;
  /// (steps+1) x N; row k holds the vertex populations at times[k].
  MatrixXd populations;
};

/// The superoperator is assembled once; each step feeds the next.
WalkResult walk_series(const Superoperator& l, const DensityMatrix& rho0,
                       double dt, int steps, double tol = 1e-8,
                       const ExpmOptions& opts = {});
WalkResult walk_series(const GeneratorMatrix& gen, const VectorXd& p0,
                       double dt, int steps, double tol = 1e-8,
                       const ExpmOptions& opts = {});
WalkResult walk_series(const Hamiltonian& h, const VectorXcd& psi0, double dt,
                       int steps, double tol = 1e-8,
                       const ExpmOptions& opts = {});

struct StationaryResult {
  DensityMatrix state;
  bool converged;
  int steps_used;
};

/// Steps the walk by dt until the max-norm population change per step drops
/// below eps, or max_steps is exhausted.
StationaryResult stationary_state(const Superoperator& l,
                                  const DensityMatrix& rho0, double dt,
                                  double eps, int max_steps,
                                  double tol = 1e-8,
                                  const ExpmOptions& opts = {});

}  // namespace qsw
