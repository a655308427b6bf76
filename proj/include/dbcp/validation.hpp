#pragma once

// A-posteriori validation of extended-system zeros (sigma*, w*) with
// w* = (lambda*, u*, v*): rigorous residual, inverse-norm bound for the
// weighted extended Jacobian, Lipschitz data for the Frechet derivative,
// slant vector with defect bound, and existence-box radii (delta_sigma,
// delta_w) certifying a locally unique solution branch sigma -> w(sigma)
// through the validated point.  All bounds are interval-rigorous; the
// floating-point approximations only steer where the bounds are computed.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbcp/extended.hpp"
#include "dbcp/interval.hpp"
#include "dbcp/spectral.hpp"
#include "dbcp/symmetry.hpp"

namespace dbcp {

// Rigorous upper bound on the spectral norm ||M||_2 (largest singular
// value), valid in the presence of rounding in the internal double-precision
// products.  Gram squaring: powers of M^T M sharpen the bound like
// (sqrt(n))^(1/2^p) while an explicit floating-point error recurrence keeps
// it one-sided.  Overestimate is a few percent at worst for well-separated
// spectra, far below the n-th-root slack of entrywise bounds.
double spectral_norm_upper_bound(const Eigen::MatrixXd& M);

// Same, for an interval matrix given as midpoint + entrywise radius >= 0.
double spectral_norm_upper_bound(const Eigen::MatrixXd& mid, const Eigen::MatrixXd& rad);

// Interval enclosure of the weighted extended Jacobian block on modes
// 1..P (columns/rows ordered [lambda | u class-A | v], the same layout and
// X/Y-orthonormal scaling as assemble_DwFe).  Returned as midpoint/radius.
// This is the head block the inverse bound inverts; exposed so tests can
// cross-check it against the matvec-built assembly.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_DwFe_enclosure(
    double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell, int P);

// Rigorous enclosure of the extended residual norm ||Fe(sigma, w)||_Y',
// Y' = R x Y_a x Y with the product (Euclidean) combination.
Interval residual_rho(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell);

// Rigorous upper bound K >= ||DwFe(sigma, w)^{-1}||_{B(Y', X')} via an
// approximate inverse A = Ahat (+) -I_tail of the weighted operator and a
// Neumann bound on the defect d = ||I - A D||: K = max(||A||, 1) / (1 - d).
// N fixes the modelled resolution, tail_N can push the head cutoff higher;
// the effective cutoff P >= max(tail_N, N_eff + 3 deg u*) guarantees the
// scalar border and all couplings are fully inside the head.
// Throws DefectNotContractive when d >= 1.
Interval inverse_K(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                   int N, int tail_N);

// Lipschitz data for DwFe and DsigmaFe on the ball
//   { (sigma, w) : |sigma - sigma*| <= d_sigma, ||w - w*||_X' <= d_w }.
// c1..c11 are the componentwise constants, M1..M4 the assembled bounds:
//   ||DwFe(s,w) - DwFe(s*,w*)||      <= M1 ||w - w*|| + M2 |s - s*|
//   ||DsigmaFe(s,w) - DsigmaFe(s*,w*)|| <= M3 (||w - w*|| + |s - s*|), M4 = 0.
struct LipschitzBundle {
  Interval c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11;
  Interval M1, M2, M3, M4;
  Interval f1_max, f2_max, f3_max;  // max |f^(l)| over the sup-norm ball of u*
  double d_w = 0.0;
  double d_sigma = 0.0;
  Interval Cbar1;  // embedding constant ||.||_inf <= Cbar1 ||.||_X, rounded up
};

LipschitzBundle lipschitz_bundle(double sigma, const ExtendedPoint& w, double d_w,
                                 double d_sigma);

// Defect norm ||DsigmaFe(sigma*, w*) + DwFe(sigma*, w*)[w_slant]||_Y' as a
// rigorous interval, for an arbitrary candidate slant vector (w_slant = 0 is
// admissible and gives ||DsigmaFe||_Y' itself).
Interval eta_of_slant(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                      const ExtendedPoint& w_slant);

// Numerically solve DwFe[w_slant] = -DsigmaFe on the active modes and return
// the slant vector together with the rigorous defect bound eta.
// Throws SingularExtendedJacobian when the solve is unreliable.
std::pair<ExtendedPoint, Interval> slant_and_eta(double sigma, const ExtendedPoint& w,
                                                 const NormalizationFunctional& ell);

// Existence/uniqueness box radii.  Requires the contraction inequalities
//   4 K^2 rho M1 < 1   and   2 K rho < d_w
// and then searches a log-spaced grid (40 points per decade, descending from
// d_sigma) for the largest delta_sigma admitting a delta_w with
//   delta_sigma ||w_slant||_X' + delta_w <= d_w,
//   2 K M1 delta_w + 2 K (M1 ||w_slant|| + M2) delta_sigma <= 1,
//   2 K rho + 2 K eta delta_sigma
//     + 2 K (M1 ||w_slant||^2 + (M2 + M3) ||w_slant|| + M4) delta_sigma^2 <= delta_w.
// delta_w is the midpoint of its feasible interval; every inequality is
// re-verified in interval arithmetic before returning.
// Throws Infeasible when no grid point survives.
struct BranchBox {
  double delta_sigma = 0.0;
  double delta_w = 0.0;
};

BranchBox branch_box(const Interval& rho, const Interval& K, const LipschitzBundle& bundle,
                     const Interval& eta, const Interval& norm_w_slant);

struct CertificateChecks {
  bool contraction = false;      // 4 K^2 rho M1 < 1
  bool radius = false;           // 2 K rho < d_w
  bool box_inside_ball = false;  // delta constraints against (d_sigma, d_w)
  bool slope = false;            // linear smallness in (delta_w, delta_sigma)
  bool closure = false;          // quadratic closure inequality for delta_w
};

struct CertificateConfig {
  double d_w = 0.0;      // 0: default 4 K rho (floored at 1e-15)
  double d_sigma = 0.0;  // 0: default = d_w
  int N = 0;             // >0: project the candidate onto P_N first (a cutoff
                         // below its support surfaces as residual, not as a
                         // silent keep); 0: use the stored degrees as-is
  int tail_N = 0;        // request a higher head cutoff for the inverse bound
  double trim_tol = 1e-14;  // coefficients with |a_k| <= trim_tol are dropped
};

struct ValidationCertificate {
  double sigma_star = 0.0;
  ExtendedPoint w_star;   // the (trimmed) point the certificate refers to
  CosineSeries ell_rep;   // representer of the normalization functional
  Interval rho, K, eta;
  LipschitzBundle bundle;
  ExtendedPoint w_slant;
  Interval norm_w_slant;
  double delta_sigma = 0.0;
  double delta_w = 0.0;
  CertificateChecks checks;
  std::optional<ScenarioRecord> scenario;  // rigorous kernel classification
  bool valid = false;
  std::string failure_stage;  // empty when valid
  std::string failure_what;
  int N = 0;       // effective modelled resolution
  int tail_N = 0;  // effective head cutoff P used by the inverse bound
  // Wall-clock per stage; informational only, excluded from any
  // reproducibility comparison of certificates.
  std::vector<std::pair<std::string, double>> timings_ms;
};

// Full pipeline: trim, classify the kernel scenario, residual, inverse
// bound, Lipschitz data, slant, box.  Never throws for numerical failures:
// those are recorded as (failure_stage, failure_what) with valid = false and
// all quantities computed before the failing stage retained.
// Throws BadInput for malformed inputs (u* off class A, bad radii, P < 1).
ValidationCertificate make_certificate(double sigma, const ExtendedPoint& w,
                                       const NormalizationFunctional& ell,
                                       const CertificateConfig& cfg = {});

}  // namespace dbcp
