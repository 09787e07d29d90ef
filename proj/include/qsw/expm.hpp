#pragma once

#include "qsw/types.hpp"

namespace qsw {

struct ExpmOptions {
  /// Krylov basis size per sub-step (clamped to the matrix dimension).
  int krylov_dim = 30;
  /// Dimensions at or below this take the dense scaling-and-squaring path;
  /// above it the dense exponential is never formed. Set to 0 to force the
  /// Krylov path everywhere.
  Index dense_limit = 256;
  /// Budget of adaptive sub-steps before giving up.
  int max_substeps = 100000;
};

/// Computes w ~ exp(a*t)*v with relative error <= tol, without forming
/// exp(a*t) when dim(a) > opts.dense_limit. Arnoldi approximation with
/// adaptive sub-stepping; throws NumericalError (with the achieved residual
/// estimate) if the step budget is exhausted.
VectorXcd expm_multiply(const SparseMatrixXcd& a, const VectorXcd& v, double t,
                        double tol = 1e-8, const ExpmOptions& opts = {});

}  // namespace qsw
