#include "qsw/walk.hpp"

#include <cmath>
#include <utility>

#include "qsw/linalg.hpp"

namespace qsw {

namespace {

constexpr double kStateTol = 1e-10;

double trace_gate(double tol) { return std::max(1e-8, 10.0 * tol); }

void check_dims(const Superoperator& l, const DensityMatrix& rho0) {
  if (rho0.dim() != l.n) {
    throw ValidationError("density matrix dimension " +
                          std::to_string(rho0.dim()) +
                          " does not match superoperator vertex count " +
                          std::to_string(l.n));
  }
}

// One propagation step on the vectorized state; hermiticity is repaired and
// the drift recorded, the trace is only checked.
MatrixXcd propagate_vectorized(const Superoperator& l, const VectorXcd& vec,
                               double t, double tol, const ExpmOptions& opts,
                               PropagationStats* stats) {
  const VectorXcd out = expm_multiply(l.l, vec, t, tol, opts);
  MatrixXcd rho = matricize(out);
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double drift = std::abs(rho.trace().real() - 1.0) +
                       std::abs(rho.trace().imag());
  if (stats) {
    stats->hermiticity_drift = std::max(stats->hermiticity_drift, asym);
    stats->trace_drift = std::max(stats->trace_drift, drift);
  }
  if (drift > trace_gate(tol)) {
    throw NumericalError("propagation lost trace by " + std::to_string(drift) +
                         " (tolerance " + std::to_string(trace_gate(tol)) +
                         "); the superoperator or state is inconsistent");
  }
  return rho;
}

}  // namespace

DensityMatrix::DensityMatrix(MatrixXcd rho, double tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw ValidationError("density matrix must be square");
  }
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw ValidationError("density matrix is not Hermitian (asymmetry " +
                          std::to_string(asym) + ")");
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0)) > tol) {
    throw ValidationError("density matrix trace must be 1");
  }
  for (Index i = 0; i < rho_.rows(); ++i) {
    const Complex d = rho_(i, i);
    if (std::abs(d.imag()) > tol || d.real() < -tol || d.real() > 1.0 + tol) {
      throw ValidationError("density matrix diagonal must be real in [0, 1]");
    }
  }
}

DensityMatrix DensityMatrix::pure(Index n, Index q) {
  if (n < 1) throw ValidationError("density matrix must have dimension >= 1");
  if (q < 1 || q > n) {
    throw ValidationError("vertex index " + std::to_string(q) +
                          " out of range 1.." + std::to_string(n));
  }
  MatrixXcd rho = MatrixXcd::Zero(n, n);
  rho(q - 1, q - 1) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
  if (n < 1) throw ValidationError("density matrix must have dimension >= 1");
  return DensityMatrix(MatrixXcd::Identity(n, n) / static_cast<double>(n));
}

double DensityMatrix::purity() const { return rho_.squaredNorm(); }

Superoperator assemble_superoperator(const Hamiltonian& h,
                                     const LindbladSet& lk, double omega,
                                     AssemblyRoute route) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw ValidationError("assemble_superoperator: omega must be in [0, 1]");
  }
  const Index n = h.dim();
  for (const auto& op : lk) {
    if (op.dim() != n) {
      throw ValidationError(
          "assemble_superoperator: Lindblad operator dimension " +
          std::to_string(op.dim()) + " does not match Hamiltonian dimension " +
          std::to_string(n));
    }
  }
  if (n > kMaxDim / n) {
    throw ValidationError("assemble_superoperator: N^2 overflows the maximum");
  }
  const Index nn = n * n;
  const Complex ic(0.0, 1.0);
  const Complex hcoef = -(1.0 - omega) * ic;

  if (route == AssemblyRoute::Kronecker) {
    const SparseMatrixXcd hc = to_complex(h.matrix());
    SparseMatrixXcd id(n, n);
    id.setIdentity();
    SparseMatrixXcd l =
        hcoef * (kron(id, hc) - kron(SparseMatrixXcd(hc.transpose()), id));
    for (const auto& op : lk) {
      const SparseMatrixXcd lm = op.matrix();
      const SparseMatrixXcd gram = SparseMatrixXcd(lm.adjoint()) * lm;
      l += omega * (kron(lm.conjugate(), lm) -
                    0.5 * (kron(id, gram) + kron(gram.conjugate(), id)));
    }
    l.prune([](Index, Index, const Complex& v) { return v != Complex(0); });
    l.makeCompressed();
    return {std::move(l), omega, n};
  }

  std::vector<Eigen::Triplet<Complex>> triplets;
  const SparseMatrixXd& hm = h.matrix();
  triplets.reserve(static_cast<std::size_t>(2 * n * hm.nonZeros()) +
                   lk.size() + static_cast<std::size_t>(2 * n * n));
  if (omega < 1.0) {
    for (Index j = 0; j < hm.outerSize(); ++j) {
      for (SparseMatrixXd::InnerIterator it(hm, j); it; ++it) {
        const Complex v = hcoef * it.value();
        for (Index b = 0; b < n; ++b) {
          // I (x) H places H in every diagonal block; H^T (x) I scatters
          // H(r, c) across block (c, r) on the block diagonal.
          triplets.emplace_back(b * n + it.row(), b * n + it.col(), v);
          triplets.emplace_back(it.col() * n + b, it.row() * n + b, -v);
        }
      }
    }
  }
  SparseMatrixXcd general_part(nn, nn);
  bool has_general = false;
  if (omega > 0.0) {
    SparseMatrixXcd id(n, n);
    id.setIdentity();
    // Accumulated c^2 per source vertex; the anticommutator corrections are
    // diagonal, so one pass per vertex covers all rank-one channels.
    VectorXd gram = VectorXd::Zero(n);
    for (const auto& op : lk) {
      if (const auto& ro = op.rank_one_form()) {
        const Index r = ro->row - 1;
        const Index s = ro->col - 1;
        const double c2 = omega * ro->amplitude * ro->amplitude;
        triplets.emplace_back(r * n + r, s * n + s, Complex(c2));
        gram(s) += c2;
      } else {
        const SparseMatrixXcd lm = op.matrix();
        const SparseMatrixXcd lgram = SparseMatrixXcd(lm.adjoint()) * lm;
        general_part +=
            omega * (kron(lm.conjugate(), lm) -
                     0.5 * (kron(id, lgram) + kron(lgram.conjugate(), id)));
        has_general = true;
      }
    }
    for (Index s = 0; s < n; ++s) {
      if (gram(s) == 0.0) continue;
      for (Index b = 0; b < n; ++b) {
        triplets.emplace_back(b * n + s, b * n + s, Complex(-0.5 * gram(s)));
        triplets.emplace_back(s * n + b, s * n + b, Complex(-0.5 * gram(s)));
      }
    }
  }
  SparseMatrixXcd l = make_sparse(nn, nn, triplets);
  if (has_general) {
    l += general_part;
    l.prune([](Index, Index, const Complex& v) { return v != Complex(0); });
    l.makeCompressed();
  }
  return {std::move(l), omega, n};
}

DensityMatrix quantum_stochastic_walk(const Superoperator& l,
                                      const DensityMatrix& rho0, double t,
                                      double tol, const ExpmOptions& opts,
                                      PropagationStats* stats) {
  check_dims(l, rho0);
  if (t < 0.0) {
    throw ValidationError("quantum_stochastic_walk: t must be nonnegative");
  }
  if (t == 0.0) {
    if (stats) *stats = {};
    return rho0;
  }
  MatrixXcd rho = propagate_vectorized(l, vectorize(rho0.matrix()), t, tol,
                                       opts, stats);
  return DensityMatrix(std::move(rho), trace_gate(tol));
}

DensityMatrix quantum_stochastic_walk(const Hamiltonian& h,
                                      const LindbladSet& lk, double omega,
                                      const DensityMatrix& rho0, double t,
                                      double tol, const ExpmOptions& opts,
                                      PropagationStats* stats) {
  return quantum_stochastic_walk(assemble_superoperator(h, lk, omega), rho0, t,
                                 tol, opts, stats);
}

VectorXcd quantum_walk(const Hamiltonian& h, const VectorXcd& psi0, double t,
                       double tol, const ExpmOptions& opts) {
  if (psi0.size() != h.dim()) {
    throw ValidationError("quantum_walk: state length does not match H");
  }
  if (std::abs(psi0.norm() - 1.0) > kStateTol) {
    throw ValidationError("quantum_walk: psi0 must be normalized");
  }
  const SparseMatrixXcd a =
      Complex(0.0, -1.0) * to_complex(h.matrix());
  return expm_multiply(a, psi0, t, tol, opts);
}

VectorXd classical_random_walk(const GeneratorMatrix& gen, const VectorXd& p0,
                               double t, double tol, const ExpmOptions& opts) {
  if (p0.size() != gen.dim()) {
    throw ValidationError("classical_random_walk: p0 length does not match M");
  }
  if (p0.minCoeff() < 0.0) {
    throw ValidationError("classical_random_walk: p0 must be nonnegative");
  }
  if (std::abs(p0.sum() - 1.0) > kStateTol) {
    throw ValidationError("classical_random_walk: p0 must sum to 1");
  }
  const SparseMatrixXcd a = to_complex(gen.m) * Complex(-1.0);
  return expm_multiply(a, p0.cast<Complex>(), t, tol, opts).real();
}

namespace {

void check_series_args(double dt, int steps) {
  if (!(dt > 0.0)) throw ValidationError("walk_series: dt must be positive");
  if (steps < 1) throw ValidationError("walk_series: steps must be >= 1");
}

}  // namespace

WalkResult walk_series(const Superoperator& l, const DensityMatrix& rho0,
                       double dt, int steps, double tol,
                       const ExpmOptions& opts) {
  check_series_args(dt, steps);
  check_dims(l, rho0);
  WalkResult result;
  result.kind = WalkKind::Stochastic;
  result.populations.resize(steps + 1, l.n);
  result.times.reserve(steps + 1);
  result.states.reserve(steps + 1);
  result.times.push_back(0.0);
  result.states.push_back(rho0.matrix());
  result.populations.row(0) = rho0.populations();
  VectorXcd vec = vectorize(rho0.matrix());
  for (int s = 1; s <= steps; ++s) {
    const MatrixXcd rho = propagate_vectorized(l, vec, dt, tol, opts, nullptr);
    vec = vectorize(rho);
    result.times.push_back(s * dt);
    result.states.push_back(rho);
    result.populations.row(s) = rho.diagonal().real();
  }
  return result;
}

WalkResult walk_series(const GeneratorMatrix& gen, const VectorXd& p0,
                       double dt, int steps, double tol,
                       const ExpmOptions& opts) {
  check_series_args(dt, steps);
  WalkResult result;
  result.kind = WalkKind::Classical;
  result.populations.resize(steps + 1, gen.dim());
  result.times.push_back(0.0);
  result.vectors.push_back(p0.cast<Complex>());
  result.populations.row(0) = p0;
  VectorXd p = p0;
  for (int s = 1; s <= steps; ++s) {
    p = classical_random_walk(gen, p, dt, tol, opts);
    // guard the simplex before feeding the next step
    for (Index i = 0; i < p.size(); ++i) p(i) = std::max(p(i), 0.0);
    p /= p.sum();
    result.times.push_back(s * dt);
    result.vectors.push_back(p.cast<Complex>());
    result.populations.row(s) = p;
  }
  return result;
}

WalkResult walk_series(const Hamiltonian& h, const VectorXcd& psi0, double dt,
                       int steps, double tol, const ExpmOptions& opts) {
  check_series_args(dt, steps);
  WalkResult result;
  result.kind = WalkKind::Quantum;
  result.populations.resize(steps + 1, h.dim());
  result.times.push_back(0.0);
  result.vectors.push_back(psi0);
  result.populations.row(0) = psi0.cwiseAbs2();
  VectorXcd psi = psi0;
  for (int s = 1; s <= steps; ++s) {
    psi = quantum_walk(h, psi, dt, tol, opts);
    psi /= psi.norm();
    result.times.push_back(s * dt);
    result.vectors.push_back(psi);
    result.populations.row(s) = psi.cwiseAbs2();
  }
  return result;
}

StationaryResult stationary_state(const Superoperator& l,
                                  const DensityMatrix& rho0, double dt,
                                  double eps, int max_steps, double tol,
                                  const ExpmOptions& opts) {
  if (!(eps > 0.0)) throw ValidationError("stationary_state: eps must be positive");
  if (!(dt > 0.0)) throw ValidationError("stationary_state: dt must be positive");
  if (max_steps < 1) {
    throw ValidationError("stationary_state: max_steps must be >= 1");
  }
  check_dims(l, rho0);
  VectorXd prev = rho0.populations();
  VectorXcd vec = vectorize(rho0.matrix());
  MatrixXcd rho = rho0.matrix();
  for (int s = 1; s <= max_steps; ++s) {
    rho = propagate_vectorized(l, vec, dt, tol, opts, nullptr);
    vec = vectorize(rho);
    const VectorXd pops = rho.diagonal().real();
    if ((pops - prev).cwiseAbs().maxCoeff() < eps) {
      return {DensityMatrix(std::move(rho), trace_gate(tol)), true, s};
    }
    prev = pops;
  }
  return {DensityMatrix(std::move(rho), trace_gate(tol)), false, max_steps};
}

}  // namespace qsw
