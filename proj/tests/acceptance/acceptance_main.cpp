// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line per criterion. Exit status is the number of failures.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsw/case_studies.hpp"
#include "qsw/io.hpp"
#include "qsw/linalg.hpp"
#include "qsw/walk.hpp"
#include "test_support.hpp"

using namespace qsw;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s] %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

ExpmOptions krylov_only() {
  ExpmOptions opts;
  opts.dense_limit = 0;  // keep the Krylov path independent of the dense oracle
  return opts;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double wall_seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

double max_rss_gb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
}

// ---- criteria 1 and 3: limit equivalence plus physical invariants --------

struct SweepOutcome {
  double qw_dev = 0.0;
  double crw_dev = 0.0;
  double trace_drift = 0.0;
  double herm_drift = 0.0;
  double min_eig = 0.0;
  double seconds = 0.0;
};

SweepOutcome run_limit_sweep() {
  SweepOutcome out;
  out.seconds = wall_seconds([&] {
    std::mt19937_64 rng(2024);
    const double tol = 1e-10;
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = 2 + static_cast<Index>(rng() % 11);
      const Graph g = test::random_graph(rng, n, true, true);
      const Hamiltonian h = graph_hamiltonian(g, 1.0);
      const GeneratorMatrix gen = generator_matrix(g, 1.0);
      const LindbladSet lk = lindblad_set(gen.m);
      const Superoperator coherent = assemble_superoperator(h, lk, 0.0);
      const Superoperator incoherent = assemble_superoperator(h, lk, 1.0);
      const Index q = 1 + static_cast<Index>(rng() % n);
      const DensityMatrix rho0 = DensityMatrix::pure(n, q);
      for (double t : {0.5, 5.0}) {
        PropagationStats stats;
        const DensityMatrix rho_qw = quantum_stochastic_walk(
            coherent, rho0, t, tol, krylov_only(), &stats);
        const VectorXcd psi =
            quantum_walk(h, VectorXcd::Unit(n, q - 1), t, tol, krylov_only());
        out.qw_dev = std::max(
            out.qw_dev, (rho_qw.populations() - VectorXd(psi.cwiseAbs2()))
                            .cwiseAbs()
                            .maxCoeff());

        const DensityMatrix rho_crw = quantum_stochastic_walk(
            incoherent, rho0, t, tol, krylov_only(), &stats);
        const VectorXd p = classical_random_walk(
            gen, VectorXd::Unit(n, q - 1), t, tol, krylov_only());
        out.crw_dev = std::max(
            out.crw_dev,
            (rho_crw.populations() - p).cwiseAbs().maxCoeff());

        out.trace_drift = std::max(out.trace_drift, stats.trace_drift);
        out.herm_drift = std::max(out.herm_drift, stats.hermiticity_drift);
        out.min_eig = std::min(out.min_eig,
                               test::min_eigenvalue(rho_qw.matrix()));
        out.min_eig = std::min(out.min_eig,
                               test::min_eigenvalue(rho_crw.matrix()));
      }
    }
  });
  return out;
}

void criterion_2_dense_oracle() {
  std::mt19937_64 rng(4096);
  std::uniform_real_distribution<double> omegas(0.0, 1.0);
  std::uniform_real_distribution<double> times(0.5, 2.0);
  double dev = 0.0;
  const double seconds = wall_seconds([&] {
    for (int trial = 0; trial < 50; ++trial) {
      const Index n = 2 + static_cast<Index>(rng() % 9);
      const Graph g = test::random_graph(rng, n, true, true);
      const Hamiltonian h = graph_hamiltonian(g, 1.0);
      const LindbladSet lk = lindblad_set(generator_matrix(g, 1.0).m);
      const Superoperator sup = assemble_superoperator(h, lk, omegas(rng));
      const Index q = 1 + static_cast<Index>(rng() % n);
      const DensityMatrix rho0 = DensityMatrix::pure(n, q);
      const double t = times(rng);
      const DensityMatrix rho =
          quantum_stochastic_walk(sup, rho0, t, 1e-10, krylov_only());
      const MatrixXcd oracle = matricize(
          dense_expm(MatrixXcd(sup.l) * t) * vectorize(rho0.matrix()));
      dev = std::max(dev,
                     (rho.matrix() - oracle).cwiseAbs().maxCoeff());
    }
  });
  report(2, dev <= 1e-8 && seconds < 60.0,
         "dense-oracle equivalence: max |QSW - expm oracle| = " + fmt(dev) +
             " (<= 1e-8), " + fmt(seconds) + " s (< 60)");
}

void criterion_4_vectorization_identity() {
  std::mt19937_64 rng(512);
  double dev = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixXcd x = test::random_dense(rng, 4, 4);
    const MatrixXcd y = test::random_dense(rng, 4, 4);
    const MatrixXcd z = test::random_dense(rng, 4, 4);
    const VectorXcd lhs = vectorize(x * y * z);
    const SparseMatrixXcd zt = MatrixXcd(z.transpose()).sparseView();
    const SparseMatrixXcd xs = x.sparseView();
    const VectorXcd rhs = kron(zt, xs) * vectorize(y);
    dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  report(4, dev <= 1e-12,
         "vectorization identity vec(XYZ) = (Z^T kron X) vec(Y): max dev = " +
             fmt(dev) + " (<= 1e-12)");
}

void criterion_5_line_transition() {
  const Graph line = line_graph(51);
  const Hamiltonian h = graph_hamiltonian(line, 1.0);
  const GeneratorMatrix gen = generator_matrix(line, 1.0);
  const LindbladSet lk = lindblad_set(gen.m);
  const DensityMatrix rho0 = DensityMatrix::pure(51, 26);
  const double tol = 1e-10;

  const VectorXd coherent =
      quantum_stochastic_walk(assemble_superoperator(h, lk, 0.0), rho0, 5.0,
                              tol, krylov_only())
          .populations();
  double asym = 0.0;
  for (Index i = 0; i < 51; ++i) {
    asym = std::max(asym, std::abs(coherent(i) - coherent(50 - i)));
  }
  Index peak = 0;
  coherent.maxCoeff(&peak);
  const bool ballistic = std::abs(static_cast<long>(peak + 1) - 26L) > 5;

  const VectorXd incoherent =
      quantum_stochastic_walk(assemble_superoperator(h, lk, 1.0), rho0, 5.0,
                              tol, krylov_only())
          .populations();
  const VectorXd crw =
      classical_random_walk(gen, VectorXd::Unit(51, 25), 5.0, tol,
                            krylov_only());
  const double crw_dev = (incoherent - crw).cwiseAbs().maxCoeff();
  bool unimodal = true;
  for (Index i = 25; i + 1 < 51; ++i) {
    if (incoherent(i + 1) > incoherent(i) + 1e-12) unimodal = false;
  }
  for (Index i = 25; i > 0; --i) {
    if (incoherent(i - 1) > incoherent(i) + 1e-12) unimodal = false;
  }

  report(5,
         asym <= 1e-8 && ballistic && crw_dev <= 1e-8 && unimodal,
         "line-graph transition: w=0 profile symmetric (dev " + fmt(asym) +
             "), ballistic peak at |i-26| = " +
             std::to_string(std::abs(static_cast<long>(peak + 1) - 26L)) +
             " (> 5); w=1 matches CRW to " + fmt(crw_dev) +
             " (<= 1e-8) and is unimodal at 26");
}

void criterion_6_dephasing_fixed_point() {
  const Graph line = line_graph(51);
  const Hamiltonian h = graph_hamiltonian(line, 1.0);
  const Superoperator sup = assemble_superoperator(h, dephasing_set(51), 1.0);
  const DensityMatrix rho0 = DensityMatrix::pure(51, 26);
  const DensityMatrix rho =
      quantum_stochastic_walk(sup, rho0, 10.0, 1e-10, krylov_only());
  const double dev = (rho.matrix() - rho0.matrix()).cwiseAbs().maxCoeff();
  report(6, dev <= 1e-10,
         "pure dephasing at w=1 is a fixed point: max |rho(10) - rho(0)| = " +
             fmt(dev) + " (<= 1e-10)");
}

void criterion_7_fmo_sink() {
  const Hamiltonian h = fmo_hamiltonian();
  const LindbladSet lk = fmo_lindblad_set(1.0, 100.0);
  const Superoperator sup = assemble_superoperator(h, lk, 0.1);
  const DensityMatrix rho0 = DensityMatrix::pure(8, 6);
  const WalkResult series =
      walk_series(sup, rho0, 0.05, 40, 1e-10, krylov_only());
  bool monotone = true;
  for (Index s = 1; s < series.populations.rows(); ++s) {
    if (series.populations(s, 7) < series.populations(s - 1, 7) - 1e-10) {
      monotone = false;
    }
  }
  const double sink_final = series.populations(40, 7);
  // dense-oracle confirmation of the frozen threshold
  const MatrixXcd oracle = matricize(
      dense_expm(MatrixXcd(sup.l) * 2.0) * vectorize(rho0.matrix()));
  const double oracle_dev = std::abs(oracle(7, 7).real() - sink_final);
  report(7,
         monotone && sink_final > 0.87 && oracle_dev <= 1e-8,
         "FMO sink population: nondecreasing over t in {0,0.05,...,2}, "
         "rho88(2) = " +
             fmt(sink_final) + " (> 0.87, dense oracle agrees to " +
             fmt(oracle_dev) + ")");
}

void criterion_8_pagerank() {
  const Graph g = pagerank_example_graph();
  const GoogleMatrix gm = google_matrix(g, 0.85);
  const Hamiltonian h = graph_hamiltonian(g, 1.0);
  const LindbladSet lk = lindblad_set(MatrixXd(1.0 * gm.g));
  const DensityMatrix rho0 = DensityMatrix::maximally_mixed(8);
  const VectorXd cpr = test::pagerank_oracle(gm.g);

  const VectorXd classical_limit =
      quantum_stochastic_walk(assemble_superoperator(h, lk, 1.0), rho0, 100.0,
                              1e-10, krylov_only())
          .populations();
  const double cpr_dev = (classical_limit - cpr).cwiseAbs().maxCoeff();

  const VectorXd quantum =
      quantum_stochastic_walk(assemble_superoperator(h, lk, 0.8), rho0, 100.0,
                              1e-10, krylov_only())
          .populations();
  double best_lift = 0.0;
  Index best_u = 0, best_v = 0;
  for (Index u = 0; u < 8; ++u) {
    for (Index v = u + 1; v < 8; ++v) {
      if (std::abs(cpr(u) - cpr(v)) < 1e-6) {
        const double lift = std::abs(quantum(u) - quantum(v));
        if (lift > best_lift) {
          best_lift = lift;
          best_u = u + 1;
          best_v = v + 1;
        }
      }
    }
  }
  report(8, cpr_dev <= 1e-6 && best_lift > 1e-3,
         "quantum pagerank: w=1 ranks match power iteration to " +
             fmt(cpr_dev) + " (<= 1e-6); degenerate pair (" +
             std::to_string(best_u) + ", " + std::to_string(best_v) +
             ") lifted by " + fmt(best_lift) + " (> 1e-3) at w=0.8");
}

double qsw_er_seconds(Index n, std::uint64_t seed) {
  const Index m = static_cast<Index>(
      std::llround(static_cast<double>(n) * std::log(static_cast<double>(n))));
  const Graph g = erdos_renyi(n, m, seed);
  const Hamiltonian h = graph_hamiltonian(g, 1.0);
  const LindbladSet lk = lindblad_set(generator_matrix(g, 1.0).m);
  const Superoperator sup = assemble_superoperator(h, lk, 0.5);
  const DensityMatrix rho0 = DensityMatrix::maximally_mixed(n);
  return wall_seconds([&] {
    (void)quantum_stochastic_walk(sup, rho0, 10.0, 1e-8, krylov_only());
  });
}

void criterion_9_scaling() {
  const double t150 = qsw_er_seconds(150, 9);
  const double gb = max_rss_gb();
  std::vector<double> log_n, log_t;
  for (Index n : {Index{40}, Index{80}, Index{160}}) {
    const double secs = qsw_er_seconds(n, 9);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(std::max(secs, 1e-6)));
  }
  // least-squares slope of log(time) vs log(N); reported, not gated
  const double mean_x = (log_n[0] + log_n[1] + log_n[2]) / 3.0;
  const double mean_y = (log_t[0] + log_t[1] + log_t[2]) / 3.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (log_n[i] - mean_x) * (log_t[i] - mean_y);
    den += (log_n[i] - mean_x) * (log_n[i] - mean_x);
  }
  const double slope = num / den;
  report(9, t150 < 600.0 && gb < 4.0,
         "scaling sanity: N=150 sparse QSW to t=10 in " + fmt(t150) +
             " s (< 600), peak rss " + fmt(gb) +
             " GB (< 4); log-log runtime slope over N in {40,80,160} = " +
             fmt(slope) + " (reported)");
}

void criterion_10_series_composition() {
  const Graph g = erdos_renyi(10, 30, 1);
  const Hamiltonian h = graph_hamiltonian(g, 1.0);
  const LindbladSet lk = lindblad_set(generator_matrix(g, 1.0).m);
  const Superoperator sup = assemble_superoperator(h, lk, 0.5);
  const DensityMatrix rho0 = DensityMatrix::pure(10, 1);
  const WalkResult series =
      walk_series(sup, rho0, 1.0, 10, 1e-8, krylov_only());
  const DensityMatrix single =
      quantum_stochastic_walk(sup, rho0, 10.0, 1e-8, krylov_only());
  const double dev =
      (series.states.back() - single.matrix()).cwiseAbs().maxCoeff();
  report(10, dev <= 1e-7,
         "series composition: 10 steps of dt=1 vs single t=10 differ by " +
             fmt(dev) + " (<= 1e-7)");
}

}  // namespace

int main() {
  const SweepOutcome sweep = run_limit_sweep();
  report(1,
         sweep.qw_dev <= 1e-8 && sweep.crw_dev <= 1e-8 && sweep.seconds < 60.0,
         "limit equivalence on 20 random digraphs (N in [2,12], t in "
         "{0.5,5}): max |QSW(w=0) - QW| = " +
             fmt(sweep.qw_dev) + ", max |QSW(w=1) - CRW| = " +
             fmt(sweep.crw_dev) + " (<= 1e-8), " + fmt(sweep.seconds) +
             " s (< 60)");
  criterion_2_dense_oracle();
  report(3,
         sweep.trace_drift <= 1e-8 && sweep.herm_drift <= 1e-8 &&
             sweep.min_eig >= -1e-8,
         "physical invariants across the sweep: trace drift " +
             fmt(sweep.trace_drift) + ", hermiticity drift " +
             fmt(sweep.herm_drift) + " (<= 1e-8), min eigenvalue " +
             fmt(sweep.min_eig) + " (>= -1e-8)");
  criterion_4_vectorization_identity();
  criterion_5_line_transition();
  criterion_6_dephasing_fixed_point();
  criterion_7_fmo_sink();
  criterion_8_pagerank();
  criterion_9_scaling();
  criterion_10_series_composition();

  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}
