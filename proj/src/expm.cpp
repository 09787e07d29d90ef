#include "qsw/expm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qsw/linalg.hpp"

namespace qsw {

namespace {

// Round a step size to two significant digits so step sequences are
// reproducible across runs.
double round_step(double tau) {
  if (tau <= 0.0 || !std::isfinite(tau)) return tau;
  const double scale = std::pow(10.0, std::floor(std::log10(tau)) - 1.0);
  return std::ceil(tau / scale) * scale;
}

}  // namespace

VectorXcd expm_multiply(const SparseMatrixXcd& a, const VectorXcd& v, double t,
                        double tol, const ExpmOptions& opts) {
  if (a.rows() != a.cols()) {
    throw ValidationError("expm_multiply: matrix must be square");
  }
  if (a.rows() != v.size()) {
    throw ValidationError("expm_multiply: matrix dim " +
                          std::to_string(a.rows()) +
                          " does not match vector length " +
                          std::to_string(v.size()));
  }
  if (!(tol > 0.0)) {
    throw ValidationError("expm_multiply: tol must be positive");
  }
  const Index n = a.rows();
  if (t == 0.0) return v;

  const double anorm = one_norm(a);
  if (anorm == 0.0) return v;  // exp(0) = I

  if (n <= opts.dense_limit) {
    return dense_expm(MatrixXcd(a) * t, n) * v;
  }

  const double beta0 = v.norm();
  if (beta0 == 0.0) return VectorXcd::Zero(n);

  const int m = static_cast<int>(
      std::clamp<Index>(opts.krylov_dim, 1, n));
  const double t_total = std::abs(t);
  const double sgn = t >= 0.0 ? 1.0 : -1.0;
  const double btol = 4.0 * anorm * std::numeric_limits<double>::epsilon();
  constexpr double kSafety = 0.5;   // fraction of tol budgeted for truncation
  constexpr double kDelta = 1.2;    // step acceptance fudge
  constexpr double kGamma = 0.9;    // step shrink factor

  VectorXcd w = v;
  MatrixXcd basis(n, m + 1);
  MatrixXcd hess(m + 2, m + 2);

  // Initial step size heuristic for an order-m truncation.
  const double fact =
      std::pow((m + 1) / std::exp(1.0), m + 1) * std::sqrt(2.0 * M_PI * (m + 1));
  double t_step = (1.0 / anorm) *
                  std::pow(fact * (kSafety * tol) / (4.0 * beta0 * anorm),
                           1.0 / m);
  t_step = round_step(t_step);

  double t_done = 0.0;
  double err_last = 0.0;
  int substeps = 0;
  while (t_done < t_total) {
    if (++substeps > opts.max_substeps) {
      std::ostringstream msg;
      msg << "expm_multiply: no convergence within " << opts.max_substeps
          << " sub-steps (last local error estimate " << err_last << ", "
          << (t_total - t_done) << " of " << t_total << " time units left)";
      throw NumericalError(msg.str());
    }

    double tau = std::min(t_total - t_done, t_step);
    const double beta = w.norm();
    if (beta == 0.0) break;
    const double err_rate =
        kSafety * tol * std::min(beta, beta0) / t_total;

    // Arnoldi with modified Gram-Schmidt plus one re-orthogonalization pass.
    hess.setZero();
    basis.col(0) = w / beta;
    int mb = m;
    bool exact_subspace = false;
    for (int j = 0; j < m; ++j) {
      VectorXcd p = sgn * (a * basis.col(j));
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const Complex hij = basis.col(i).dot(p);
          p -= hij * basis.col(i);
          hess(i, j) += hij;
        }
      }
      const double s = p.norm();
      if (s <= btol || j + 1 == n) {
        // Invariant subspace (or the full space): the projection is exact.
        mb = j + 1;
        exact_subspace = true;
        break;
      }
      hess(j + 1, j) = s;
      basis.col(j + 1) = p / s;
    }

    double avnorm = 0.0;
    int k1 = 2;
    if (exact_subspace) {
      k1 = 0;
      tau = t_total - t_done;
    } else {
      hess(m + 1, m) = 1.0;  // augmentation for the local error estimate
      avnorm = (a * basis.col(m)).norm();
    }

    const int dim_f = mb + k1;
    MatrixXcd f;
    double err_loc = 0.0;
    double xm = 1.0 / m;
    bool accepted = false;
    for (int reject = 0; reject <= 12; ++reject) {
      f = (tau * hess.topLeftCorner(dim_f, dim_f)).exp();
      if (k1 == 0) {
        accepted = true;
        break;
      }
      const double phi1 = std::abs(beta * f(m, 0));
      const double phi2 = std::abs(beta * f(m + 1, 0)) * avnorm;
      if (phi1 > 10.0 * phi2) {
        err_loc = phi2;
        xm = 1.0 / m;
      } else if (phi1 > phi2) {
        err_loc = phi1 * phi2 / (phi1 - phi2);
        xm = 1.0 / m;
      } else {
        err_loc = phi1;
        xm = 1.0 / std::max(m - 1, 1);
      }
      if (std::isfinite(err_loc) && err_loc <= kDelta * tau * err_rate) {
        accepted = true;
        break;
      }
      tau = std::isfinite(err_loc)
                ? kGamma * tau * std::pow(tau * err_rate / err_loc, xm)
                : tau / 2.0;
      tau = round_step(tau);
      if (!(tau > t_total * 1e-14)) break;
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "expm_multiply: step size collapsed at t = " << t_done
          << " (local error estimate " << err_loc << " vs budget "
          << kDelta * tau * err_rate << ")";
      throw NumericalError(msg.str());
    }

    const int mx = mb + std::max(0, k1 - 1);
    w = beta * (basis.leftCols(mx) * f.topLeftCorner(mx, 1)).eval();
    t_done += tau;
    err_last = err_loc;
    if (k1 != 0 && err_loc > 0.0) {
      t_step = round_step(kGamma * tau * std::pow(tau * err_rate / err_loc, xm));
    }
  }
  return w;
}

}  // namespace qsw
