#pragma once

// Floating-point Galerkin machinery: Newton solves, natural-parameter branch
// continuation, eigenvalue-crossing bifurcation detection, kernel extraction
// and classification, and the pitchfork shape diagnostics.
//
// Spectral detection works on the weighted symmetric realization of the
// linearization. With D2 = diag((k pi)^2) the Galerkin matrix factors as
// J = D2 B where B is symmetric (the model is an H^{-1} gradient flow), so
// J is similar to D2^{1/2} B D2^{1/2} and congruent to
// Bhat = D2^{-1/2} B D2^{-1/2}. By Sylvester's law Bhat has the same signs
// and the same zeros as the spectrum of J while staying O(1)-scaled, which
// is what makes a 1e-10 eigenvalue tolerance meaningful in doubles.

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <vector>

#include "dbcp/model.hpp"
#include "dbcp/spectral.hpp"
#include "dbcp/symmetry.hpp"

namespace dbcp {

// lambda_k = (k pi)^4 / ((k pi)^2 - sigma), the detachment point of the
// k-layer primary branch from the trivial solution.
double primary_lambda(double sigma, int k);

struct BranchSample {
  double lambda = 0.0;
  CosineSeries u;
  double normX = 0.0;
  // Weighted-realization eigenvalues nearest zero (same signs/zeros as the
  // Galerkin linearization spectrum) and the count of positive ones.
  std::vector<double> smallest_eigs;
  int stability_index = 0;
};

struct StepPolicy {
  int N = 200;
  double newton_tol = 1e-13;
  int newton_maxit = 50;
  double initial_step = 0.25;
  double min_step = 1e-8;
  double max_step = 8.0;
  double seed_offset = 0.5;  // first sample sits at lambda_k + seed_offset
  int eig_store = 6;
  std::size_t max_samples = 4000;
};

struct BifurcationRecord {
  double lambda0 = 0.0;
  CosineSeries u0;
  CosineSeries phi0;  // unit X-norm, first significant coefficient positive
  int n_sym = 0;
  std::optional<ScenarioRecord> scenario;  // nullopt: inconclusive
  double shape_rho = std::numeric_limits<double>::quiet_NaN();
  double nondegeneracy_value = std::numeric_limits<double>::quiet_NaN();
  bool resolved = true;  // false: bisection budget exhausted, see bracket
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double kernel_eig = 0.0;  // weighted eigenvalue at lambda0
};

struct DetectPolicy {
  double detect_tol = 1e-10;
  int max_bisect = 50;
  double class_mass_min = 0.99;
  int N = 0;  // 0: inherit the branch's Galerkin dimension
  double newton_tol = 1e-13;
  int newton_maxit = 50;
};

struct ShapeDiagnostics {
  CosineSeries xi0;
  CosineSeries zeta0;
  CosineSeries psi0;  // Y-unit annihilator representer of R(L)
  double shape_rho = std::numeric_limits<double>::quiet_NaN();
  double nondegeneracy_value = std::numeric_limits<double>::quiet_NaN();
};

// Dense Galerkin matrix of DuF at u in the raw coefficient basis.
Eigen::MatrixXd galerkin_jacobian(const ModelParams& p, const CosineSeries& u, int N);

// Symmetric weighted realization Bhat described above.
Eigen::MatrixXd weighted_jacobian(const ModelParams& p, const CosineSeries& u, int N);

struct WeightedEig {
  double nu = 0.0;
  CosineSeries vec;  // unit X-norm eigenvector, canonical sign
  ClassTag cls = ClassTag::A;
  double mass = 0.0;  // X-norm fraction carried by cls
};

// Full weighted spectrum, ascending in nu, with per-vector class masses.
std::vector<WeightedEig> weighted_spectrum(const ModelParams& p, const CosineSeries& u,
                                           int N, int n_sym);

// Newton iteration for Q_N F(p, u) = 0 inside span{cos(k pi x): k <= N}.
CosineSeries newton_equilibrium(const ModelParams& p, const CosineSeries& u_init, int N,
                                double tol = 1e-13, int maxit = 50);

// Natural-parameter continuation of the k-layer primary branch over
// [lambda_lo, lambda_hi] with adaptive step halving; samples sorted by
// lambda. On persistent Newton failure the branch is truncated at the last
// good sample rather than discarded.
std::vector<BranchSample> continue_branch(double sigma, int k, double lambda_lo,
                                          double lambda_hi, const StepPolicy& pol = {});

// The trivial branch u = 0 sampled uniformly; used to exercise detection
// against the closed-form crossing points lambda_k.
std::vector<BranchSample> trivial_branch(double sigma, double lambda_lo, double lambda_hi,
                                         int samples, int N);

// Scans the branch for sign changes of weighted eigenvalues whose
// eigenvectors live outside the fixed-point class A (class-A crossings are
// branch-internal events) and bisects each in lambda until the crossing
// eigenvalue is below detect_tol.
std::vector<BifurcationRecord> detect_bifurcations(double sigma,
                                                   const std::vector<BranchSample>& branch,
                                                   int n_sym,
                                                   const DetectPolicy& pol = {});

// xi0, zeta0, psi0 and the pitchfork shape constant rho; requires the
// record's kernel class to be B or C.
ShapeDiagnostics shape_diagnostics(const BifurcationRecord& rec, double sigma, int N = 0);

}  // namespace dbcp
