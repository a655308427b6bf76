// A-posteriori validation: rigorous residual, inverse-norm bound via an
// approximate inverse plus Neumann defect estimate, Lipschitz constants for
// the Frechet derivatives, slant-vector defect, and the existence-box search.
//
// Coordinates everywhere are the X/Y-orthonormal ones of assemble_DwFe, so
// Euclidean vector/matrix norms equal the product-space operator norms.  The
// operator splits into a head block on modes 1..P (inverted numerically, with
// an interval enclosure of the block keeping the inversion honest) and a tail
// that is -identity plus explicitly bounded coupling; P is chosen so the
// scalar border, the normalization row, and every multiplication band lie
// entirely inside the head, which reduces the tail analysis to closed-form
// sums over the coefficient series of lambda f'(u*), lambda f''(u*)v*, and
// the constant lambda sigma.

#include "dbcp/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "dbcp/errors.hpp"
#include "dbcp/model.hpp"

namespace dbcp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Interval imax(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

ICosineSeries iv_series(const CosineSeries& s) {
  CosineSeries m = materialized(s);
  ICosineSeries out;
  out.a.reserve(m.a.size());
  for (double x : m.a) out.a.push_back(Interval(x));
  return out;
}

CosineSeries trim_small(const CosineSeries& s, double tol) {
  CosineSeries out = materialized(s);
  for (double& x : out.a)
    if (std::fabs(x) <= tol) x = 0.0;
  return trimmed(out);
}

void validate_point(const ExtendedPoint& w) {
  if (w.n_sym < 1) throw BadInput("validation", "extended point needs n_sym >= 1");
  if (!std::isfinite(w.lambda)) throw BadInput("validation", "lambda must be finite");
  CosineSeries u = materialized(w.u);
  CosineSeries v = materialized(w.v);
  for (double x : v.a)
    if (!std::isfinite(x)) throw BadInput("validation", "v has a nonfinite coefficient");
  for (std::size_t i = 0; i < u.a.size(); ++i) {
    if (!std::isfinite(u.a[i])) throw BadInput("validation", "u has a nonfinite coefficient");
    if (u.a[i] != 0.0 && class_of((int)i + 1, w.n_sym) != ClassTag::A)
      throw BadInput("validation", "u has support outside class A of n_sym");
  }
}

Interval sum_abs(const ICosineSeries& s) {
  Interval t(0.0);
  for (const Interval& x : s.a) t = t + abs(x);
  return t;
}

bool iv_is_zero(const Interval& x) { return x.lo() == 0.0 && x.hi() == 0.0; }

int deg_nonzero(const ICosineSeries& s) {
  int d = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i)
    if (!iv_is_zero(s.a[i])) d = (int)i + 1;
  return d;
}

// Effective resolution and head cutoff.  base covers every stored mode of
// u*, v*, and the representer; P additionally covers the widest band
// (deg f(u*) = 3 deg u*), so coupling never reaches past the head.
std::pair<int, int> head_sizes(const ExtendedPoint& w, const NormalizationFunctional& ell,
                               int N, int tail_N) {
  int du = (int)trimmed(materialized(w.u)).modes();
  int dv = (int)trimmed(materialized(w.v)).modes();
  int dr = (int)trimmed(materialized(ell.rep)).modes();
  int base = std::max({N, du, dv, dr, 1});
  int P = std::max(tail_N, base + 3 * du);
  return {base, P};
}

// ---- rigorous norms of double matrices ------------------------------------

double norm_inf_up(const MatrixXd& A) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) s = rnd::add_up(s, std::fabs(A(i, j)));
    m = std::max(m, s);
  }
  return m;
}

double norm_one_up(const MatrixXd& A) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) s = rnd::add_up(s, std::fabs(A(i, j)));
    m = std::max(m, s);
  }
  return m;
}

// sqrt(||A||_1 ||A||_inf) >= ||A||_2 for every A; cheap but up to sqrt(n) off.
double mixed_norm_up(const MatrixXd& A) {
  return rnd::sqrt_up(rnd::mul_up(norm_one_up(A), norm_inf_up(A)));
}

// gamma_n = n u / (1 - n u): |fl(x.y) - x.y| <= gamma_n |x|.|y| for length-n
// dot products, any summation order, with or without fused multiply-adds.
double gamma_up(Eigen::Index n) {
  const double u = 0.5 * std::numeric_limits<double>::epsilon();
  double nu = rnd::mul_up((double)n, u);
  if (nu >= 0.5) throw NumericalError("linalg", "dimension too large for the rounding model");
  return rnd::div_up(nu, rnd::sub_down(1.0, nu));
}

// Core of the spectral norm bound: repeated squaring of B0 = fl(Ms^T Ms)
// with the error recurrence e' = e (2b + e) + gamma_n b^2 tracking
// ||exact - computed||_inf, and per-level power-of-two rescans keeping the
// entries in range.  On exit sigma_1(Ms)^2 <= (b_p + e_p)^(1/2^p) * 2^(T/2^p).
double gram_sigma_max_up(const MatrixXd& M) {
  const Eigen::Index r = M.rows(), c = M.cols();
  if (r == 0 || c == 0) return 0.0;
  double amax = M.cwiseAbs().maxCoeff();
  if (amax == 0.0) return 0.0;
  int e2 = 0;
  (void)std::frexp(amax, &e2);  // amax <= 2^e2 < 2 amax
  MatrixXd Ms = M * std::ldexp(1.0, -e2);
  // Power-of-two scaling is exact except for entries driven subnormal; those
  // pick up at most 2^-1075 each, absorbed by a crude additive slop.
  const double slop = rnd::mul_up((double)std::max(r, c), 0x1p-900);
  MatrixXd B = Ms.transpose() * Ms;
  if (!B.allFinite()) throw NumericalError("linalg", "nonfinite product in norm bound");
  double b = norm_inf_up(B);
  // |B0 - Ms^T Ms| <= gamma_r |Ms^T||Ms| entrywise, and ||  |Ms^T||Ms| ||_inf
  // <= ||Ms||_1 ||Ms||_inf.
  double e = rnd::mul_up(gamma_up(r), rnd::mul_up(norm_one_up(Ms), norm_inf_up(Ms)));
  const double gn = gamma_up(c);
  const int p = 6;
  long long T = 0;
  for (int i = 0; i < p; ++i) {
    int tau = 0;
    if (b > 0.0) (void)std::frexp(b, &tau);  // b <= 2^tau
    if (tau < -50) tau = -50;
    const double t = std::ldexp(1.0, -tau);
    B *= t;
    b = rnd::mul_up(b, t);
    e = rnd::mul_up(e, t);
    e = rnd::add_up(e, rnd::mul_up((double)c, 0x1p-1000));  // subnormal slop
    T = 2 * (T + tau);
    MatrixXd B2 = B * B;
    if (!B2.allFinite()) throw NumericalError("linalg", "nonfinite product in norm bound");
    double bn = norm_inf_up(B2);
    double en = rnd::add_up(rnd::mul_up(e, rnd::add_up(rnd::add_up(b, b), e)),
                            rnd::mul_up(gn, rnd::mul_up(b, b)));
    B.swap(B2);
    b = bn;
    e = en;
  }
  // rho(B0_exact) <= ((b + e) * 2^rem)^(1/2^p) * 2^q with T = q 2^p + rem.
  long long q = T >> p;
  long long rem = T - (q << p);
  Interval val = Interval(0.0, rnd::add_up(b, e)) * Interval(std::ldexp(1.0, (int)rem));
  for (int i = 0; i < p; ++i) val = sqrt(val);
  double rho_ub = rnd::mul_up(val.hi(), std::ldexp(1.0, (int)q));
  double sig_ub = rnd::add_up(rnd::sqrt_up(rho_ub), slop);
  return rnd::mul_up(sig_ub, std::ldexp(1.0, e2));
}

// ---- head-block assembly ---------------------------------------------------

// Multiplication band of a coefficient series c (mean + cosine modes):
// entry (k, j) of the Galerkin matrix of w -> c w is
//   mean + c_{2k}/2            for j = k,
//   (c_{|k-j|} + c_{k+j}) / 2  for j != k (terms present while <= deg c).
struct Coupling {
  Interval mean;
  ICosineSeries c;
  Interval at(int k, int j) const {
    static const Interval half(0.5);
    const int deg = (int)c.a.size();
    Interval s(0.0);
    if (k == j) {
      s = mean;
    } else {
      int m = k > j ? k - j : j - k;
      if (m <= deg) s = half * c.a[m - 1];
    }
    if (k + j <= deg) s = s + half * c.a[k + j - 1];
    return s;
  }
};

struct OpData {
  Interval lam, sig, gam, sqrt2, rep_x2;
  ICosineSeries iu, iv, fu, fpv, irep;
  Coupling cu;   // lambda f'(u*): both diagonal function blocks
  Coupling cvu;  // lambda f''(u*) v* = -6 lambda u* v*: kernel-row x u-column
  std::vector<int> amodes;
  int n = 0, P = 0;
};

OpData build_opdata(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                    int P) {
  validate_point(w);
  if (!(sigma > 0.0)) throw BadInput("validation", "sigma must be positive");
  if (P < 1) throw BadInput("validation", "head cutoff must be >= 1");
  if (P > 6000) throw BadInput("validation", "head cutoff too large; trim the series or lower tail_N");
  OpData D;
  D.lam = Interval(w.lambda);
  D.sig = Interval(sigma);
  D.gam = D.lam * D.sig;
  D.sqrt2 = sqrt(Interval(2.0));
  D.iu = iv_series(w.u);
  D.iv = iv_series(w.v);
  auto iell = lift_normalization(ell);
  D.irep = materialized(iell.rep);
  D.rep_x2 = iell.rep_x2;
  D.fu = materialized(detail::f_series(D.iu));
  D.fpv = materialized(detail::fprime_times(D.iu, D.iv));
  auto u2 = product(D.iu, D.iu);
  const Interval m3l = Interval(-3.0) * D.lam;
  D.cu.mean = D.lam * (Interval(1.0) - Interval(3.0) * u2.mean);
  D.cu.c = materialized(scaled(u2.series, m3l));
  auto uv = product(D.iu, D.iv);
  const Interval m6l = Interval(-6.0) * D.lam;
  D.cvu.mean = m6l * uv.mean;
  D.cvu.c = materialized(scaled(uv.series, m6l));
  D.n = w.n_sym;
  D.P = P;
  D.amodes = classA_modes(w.n_sym, P);
  return D;
}

void fill_enclosure(const OpData& D, MatrixXd* mid, MatrixXd* rad) {
  const int P = D.P;
  const int na = (int)D.amodes.size();
  const int dim = 1 + na + P;
  *mid = MatrixXd::Zero(dim, dim);
  *rad = MatrixXd::Zero(dim, dim);
  auto put = [&](int i, int j, const Interval& e) {
    (*mid)(i, j) = e.mid();
    (*rad)(i, j) = e.rad();
  };
  const Interval one(1.0);
  // normalization row: ell acting on the v tangents
  const int drep = (int)D.irep.a.size();
  for (int j = 1; j <= std::min(P, drep); ++j) {
    if (iv_is_zero(D.irep.a[j - 1])) continue;
    put(0, na + j, D.irep.a[j - 1] * kpi2(j) / (D.sqrt2 * D.rep_x2));
  }
  // scalar column: lambda-derivatives of the two function rows
  auto coeff = [](const ICosineSeries& s, int k) {
    return k <= (int)s.a.size() ? s.a[k - 1] : Interval(0.0);
  };
  for (int i = 0; i < na; ++i) {
    int k = D.amodes[i];
    put(1 + i, 0, (coeff(D.fu, k) - D.sig * coeff(D.iu, k) / kpi2(k)) / D.sqrt2);
  }
  for (int k = 1; k <= P; ++k) {
    put(na + k, 0, (coeff(D.fpv, k) - D.sig * coeff(D.iv, k) / kpi2(k)) / D.sqrt2);
  }
  // u rows x u columns
  for (int i = 0; i < na; ++i) {
    int k = D.amodes[i];
    for (int j2 = 0; j2 < na; ++j2) {
      int j = D.amodes[j2];
      Interval cc = D.cu.at(k, j);
      if (k == j) {
        put(1 + i, 1 + j2, cc / kpi2(j) - one - D.gam / kpi4(k));
      } else if (!iv_is_zero(cc)) {
        put(1 + i, 1 + j2, cc / kpi2(j));
      }
    }
  }
  // v rows: coupling to u columns (second derivative band) and v columns
  for (int k = 1; k <= P; ++k) {
    const int row = na + k;
    for (int j2 = 0; j2 < na; ++j2) {
      int j = D.amodes[j2];
      Interval cc = D.cvu.at(k, j);
      if (!iv_is_zero(cc)) put(row, 1 + j2, cc / kpi2(j));
    }
    for (int j = 1; j <= P; ++j) {
      Interval cc = D.cu.at(k, j);
      if (k == j) {
        put(row, na + j, cc / kpi2(j) - one - D.gam / kpi4(k));
      } else if (!iv_is_zero(cc)) {
        put(row, na + j, cc / kpi2(j));
      }
    }
  }
}

// Product-space X-norm of a tangent triple.
Interval triple_norm_x(const ExtendedPoint& w) {
  auto iu = iv_series(w.u);
  auto iv = iv_series(w.v);
  return sqrt(sqr(Interval(w.lambda)) + sqr(norms(iu).normX) + sqr(norms(iv).normX));
}

// Shared data for the box inequalities so the search and the certificate
// re-check evaluate literally the same expressions.
struct BoxTerms {
  Interval A25, B25, C0, C1, C2, nw;
  double d_w = 0.0, d_sigma = 0.0;
};

BoxTerms box_terms(const Interval& rho, const Interval& K, const LipschitzBundle& b,
                   const Interval& eta, const Interval& nw) {
  BoxTerms t;
  const Interval twoK = Interval(2.0) * K;
  t.A25 = twoK * b.M1;
  t.B25 = twoK * (b.M1 * nw + b.M2);
  t.C0 = twoK * rho;
  t.C1 = twoK * eta;
  t.C2 = twoK * (b.M1 * sqr(nw) + (b.M2 + b.M3) * nw + b.M4);
  t.nw = nw;
  t.d_w = b.d_w;
  t.d_sigma = b.d_sigma;
  return t;
}

bool box_eq24(const BoxTerms& t, double ds, double dw) {
  if (!(ds > 0.0) || !(dw > 0.0) || ds > t.d_sigma || dw > t.d_w) return false;
  return (t.nw * Interval(ds) + Interval(dw)).hi() <= t.d_w;
}
bool box_eq25(const BoxTerms& t, double ds, double dw) {
  return (t.A25 * Interval(dw) + t.B25 * Interval(ds)).hi() <= 1.0;
}
bool box_eq26(const BoxTerms& t, double ds, double dw) {
  return (t.C0 + t.C1 * Interval(ds) + t.C2 * sqr(Interval(ds))).hi() <= dw;
}

}  // namespace

// ---- public entry points ---------------------------------------------------

double spectral_norm_upper_bound(const MatrixXd& M) {
  if (!M.allFinite()) throw NumericalError("linalg", "nonfinite matrix in norm bound");
  return gram_sigma_max_up(M);
}

double spectral_norm_upper_bound(const MatrixXd& mid, const MatrixXd& rad) {
  if (mid.rows() != rad.rows() || mid.cols() != rad.cols())
    throw DimError("midpoint/radius shape mismatch");
  if (!mid.allFinite() || !rad.allFinite())
    throw NumericalError("linalg", "nonfinite matrix in norm bound");
  if ((rad.array() < 0.0).any()) throw BadInput("linalg", "radius matrix must be >= 0");
  // sigma(mid + E) <= sigma(mid) + sigma(|E|) <= sigma(mid) + sigma(rad),
  // and for the entrywise-nonnegative rad the mixed norm is rigorous as is.
  return rnd::add_up(gram_sigma_max_up(mid), mixed_norm_up(rad));
}

std::pair<MatrixXd, MatrixXd> assemble_DwFe_enclosure(double sigma, const ExtendedPoint& w,
                                                      const NormalizationFunctional& ell,
                                                      int P) {
  OpData D = build_opdata(sigma, w, ell, P);
  std::pair<MatrixXd, MatrixXd> out;
  fill_enclosure(D, &out.first, &out.second);
  return out;
}

Interval residual_rho(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell) {
  validate_point(w);
  ModelParams p(sigma, w.lambda);
  auto iu = iv_series(w.u);
  auto iv = iv_series(w.v);
  auto iell = lift_normalization(ell);
  IFeTriple t = Fe_eval(p, iu, iv, iell);
  return sqrt(sqr(t.r1) + sqr(norms(t.r2).normY) + sqr(norms(t.r3).normY));
}

Interval inverse_K(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                   int N, int tail_N) {
  if (N < 0 || tail_N < 0) throw BadInput("validation", "N and tail_N must be >= 0");
  auto [base, P] = head_sizes(w, ell, N, tail_N);
  (void)base;
  OpData D = build_opdata(sigma, w, ell, P);
  // The cutoff must strictly dominate every stored band so the tail sees only
  // the two diagonal couplings plus the constant gamma; guaranteed by
  // head_sizes, checked defensively.
  if (deg_nonzero(D.fu) > P || deg_nonzero(D.fpv) > P || deg_nonzero(D.irep) > P ||
      deg_nonzero(D.cu.c) > P || deg_nonzero(D.cvu.c) > P || deg_nonzero(D.iu) > P ||
      deg_nonzero(D.iv) > P)
    throw NumericalError("inverse", "head cutoff does not cover the stored bands");

  MatrixXd Hm, Hr;
  fill_enclosure(D, &Hm, &Hr);
  const Eigen::Index dim = Hm.rows();

  Eigen::PartialPivLU<MatrixXd> lu(Hm);
  MatrixXd Ahat = lu.inverse();
  if (!Ahat.allFinite())
    throw DefectNotContractive("head block numerically singular; cannot build approximate inverse");

  // Head defect  E_HH = I - Ahat H  for every H inside [Hm +- Hr]:
  // computed residual + GEMM rounding + radius spill, each bounded by the
  // mixed (1,inf) norm which always dominates the spectral norm.
  MatrixXd R = MatrixXd::Identity(dim, dim) - (Ahat * Hm).eval();
  const double gn = gamma_up(dim);
  const double facG = rnd::add_up(1.0, rnd::mul_up(3.0, gn));
  MatrixXd AbsA = Ahat.cwiseAbs();
  const double mixedG1 = mixed_norm_up((AbsA * Hm.cwiseAbs()).eval());
  const double mixedG2 = mixed_norm_up((AbsA * Hr).eval());
  const double aHH = rnd::add_up(
      rnd::mul_up(mixed_norm_up(R), rnd::add_up(1.0, 0x1p-50)),
      rnd::add_up(rnd::mul_up(rnd::mul_up(gn, facG), mixedG1), rnd::mul_up(facG, mixedG2)));

  const double normA = gram_sigma_max_up(Ahat);

  // Tail bounds.  All couplings scale like 1/(j pi)^2 of the column; the
  // per-mode denominators in the tail->head block are what keeps the bound
  // meaningful when the band nearly reaches the cutoff.
  const Interval half(0.5);
  const Interval A1 = sum_abs(D.cu.c), A1m = abs(D.cu.mean);
  const Interval A2 = sum_abs(D.cvu.c), A2m = abs(D.cvu.mean);
  auto T1 = [&](const ICosineSeries& c) {
    Interval t(0.0);
    for (int m = 1; m <= (int)c.a.size(); ++m) {
      if (iv_is_zero(c.a[m - 1])) continue;
      t = t + abs(c.a[m - 1]) / kpi2(P + 1 - m);
    }
    return t * half;
  };
  const Interval eTH = T1(D.cu.c) + T1(D.cvu.c);
  const Interval eHT = Interval(normA) * ((A1 + A2) * half / kpi2(P + 1));
  const Interval gterm = abs(D.gam) / kpi4(P + 1);
  const Interval rowU = (A1m + A1) / kpi2(P + 1) + gterm;
  const Interval rowV = (A1m + A1 + A2m + A2) / kpi2(P + 1) + gterm;
  const Interval eTT = imax(rowU, rowV);  // row and column sums share these bounds

  const Interval d =
      sqrt(sqr(Interval(aHH)) + sqr(eHT) + sqr(eTH) + sqr(eTT));
  if (!(d.hi() < 1.0))
    throw DefectNotContractive("defect bound " + std::to_string(d.hi()) +
                               " >= 1; raise tail_N or refine the candidate");
  const Interval K =
      Interval(std::max(normA, 1.0)) / (Interval(1.0) - Interval(d.hi()));
  return Interval(K.hi());
}

LipschitzBundle lipschitz_bundle(double sigma, const ExtendedPoint& w, double d_w,
                                 double d_sigma) {
  validate_point(w);
  if (!(sigma > 0.0)) throw BadInput("validation", "sigma must be positive");
  if (!(d_w >= 0.0) || !(d_sigma >= 0.0) || !std::isfinite(d_w) || !std::isfinite(d_sigma))
    throw BadInput("validation", "ball radii must be finite and >= 0");
  LipschitzBundle B;
  B.d_w = d_w;
  B.d_sigma = d_sigma;
  B.Cbar1 = Interval(0.149072);  // >= 1/sqrt(45), the sharp embedding constant, rounded up

  auto iu = iv_series(w.u);
  auto iv = iv_series(w.v);
  const auto nu = norms(iu);
  const auto nv = norms(iv);
  const Interval dwI(d_w), dsI(d_sigma);

  // max |f^(l)| over the sup-norm ball |rho| <= ||u*||_inf + Cbar1 d_w of the
  // cubic f(rho) = rho - rho^3 (exact range of the polynomial, no slack).
  const Interval R = nu.supBound + B.Cbar1 * dwI;
  const Interval domR(-R.hi(), R.hi());
  B.f1_max = Interval(iv_poly_range(1.0, 0.0, -3.0, 0.0, domR).mag());
  B.f2_max = Interval(iv_poly_range(0.0, -6.0, 0.0, 0.0, domR).mag());
  B.f3_max = Interval(6.0);

  const Interval pi2 = sqr(pi_interval());
  const Interval pi4 = sqr(pi2);
  const Interval sigA = Interval(std::fabs(sigma)) + dsI;
  const Interval lamA = Interval(std::fabs(w.lambda)) + dwI;

  B.c1 = (pi2 * B.f1_max + sigA) / pi4;
  B.c2 = nu.normY;
  // c3 and c7 both bound the f'(u)-coupling row over the full ball; the exact
  // polynomial range replaces the cruder 1 + 3 R^2 estimate.
  B.c3 = B.c1;
  B.c4 = B.Cbar1 * B.f2_max * lamA / pi2;
  B.c5 = Interval(std::fabs(w.lambda)) / pi4;
  B.c6 = B.f2_max * nv.supBound / pi2;
  B.c7 = B.c1;
  B.c8 = nv.normY;
  const Interval six(6.0);
  auto uv = product(iu, iv);
  B.c9 = six * (abs(uv.mean) + norms(uv.series).supBound) / pi2;  // ||f''(u*) v*||_inf / pi^2
  B.c10 = B.Cbar1 * B.f3_max * lamA * (nv.supBound + B.Cbar1 * dwI) / pi2;
  B.c11 = B.Cbar1 * (six * nu.supBound) * lamA / pi2;  // ||f''(u*)||_inf <= 6 ||u*||_inf

  B.M1 = sqrt(Interval(2.0) *
              imax(sqr(B.c3) + sqr(B.c1 + B.c4),
                   sqr(B.c3 + B.c9) + sqr(B.c4 + B.c6 + B.c10) + sqr(B.c7 + B.c11)));
  B.M2 = sqrt(Interval(2.0)) * imax(B.c2 + B.c5, B.c5 + B.c8);
  B.M3 = sqrt(Interval(2.0)) * imax(lamA / pi4, sqrt(sqr(nu.normY) + sqr(nv.normY)));
  B.M4 = Interval(0.0);
  return B;
}

Interval eta_of_slant(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                      const ExtendedPoint& w_slant) {
  validate_point(w);
  CosineSeries ut = materialized(w_slant.u);
  for (std::size_t i = 0; i < ut.a.size(); ++i) {
    if (!std::isfinite(ut.a[i])) throw BadInput("validation", "slant u has a nonfinite coefficient");
    if (ut.a[i] != 0.0 && class_of((int)i + 1, w.n_sym) != ClassTag::A)
      throw BadInput("validation", "slant u has support outside class A of n_sym");
  }
  if (!std::isfinite(w_slant.lambda)) throw BadInput("validation", "slant lambda must be finite");
  ModelParams p(sigma, w.lambda);
  auto iu = iv_series(w.u);
  auto iv = iv_series(w.v);
  auto iut = iv_series(w_slant.u);
  auto ivt = iv_series(w_slant.v);
  auto iell = lift_normalization(ell);
  const Interval lam(w.lambda);
  const Interval lamt(w_slant.lambda);
  // g = DsigmaFe + DwFe[w_slant], componentwise.
  Interval g1 = iell(ivt);
  ICosineSeries g2 =
      materialized(scaled(iu, -lam) + scaled(materialized(DlamF(p, iu)), lamt) +
                   materialized(DuF_apply(p, iu, iut)));
  ICosineSeries g3 = materialized(
      scaled(iv, -lam) + scaled(materialized(DlamuF_apply(p, iu, iv)), lamt) +
      materialized(DuuF_apply(p, iu, iv, iut)) + materialized(DuF_apply(p, iu, ivt)));
  return sqrt(sqr(g1) + sqr(norms(g2).normY) + sqr(norms(g3).normY));
}

std::pair<ExtendedPoint, Interval> slant_and_eta(double sigma, const ExtendedPoint& w,
                                                 const NormalizationFunctional& ell) {
  validate_point(w);
  auto [N, P] = head_sizes(w, ell, 0, 0);
  (void)P;
  MatrixXd M = assemble_DwFe(sigma, w, ell, N);
  const std::vector<int> amodes = classA_modes(w.n_sym, N);
  const int na = (int)amodes.size();
  const Eigen::Index dim = M.rows();

  FeTriple g = DsigmaFe(sigma, w);
  CosineSeries g2 = materialized(g.r2), g3 = materialized(g.r3);
  auto coeff = [](const CosineSeries& s, int k) {
    return k <= (int)s.a.size() ? s.a[k - 1] : 0.0;
  };
  const double s2 = std::sqrt(2.0);
  VectorXd rhs = VectorXd::Zero(dim);
  for (int i = 0; i < na; ++i) {
    int k = amodes[i];
    rhs(1 + i) = -coeff(g2, k) / (detail::kpi2_s<double>(k) * s2);
  }
  for (int k = 1; k <= N; ++k) rhs(na + k) = -coeff(g3, k) / (detail::kpi2_s<double>(k) * s2);

  Eigen::FullPivLU<MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw SingularExtendedJacobian("extended derivative is singular at the candidate");
  VectorXd x = lu.solve(rhs);
  if (!x.allFinite())
    throw SingularExtendedJacobian("slant solve produced nonfinite coordinates");

  ExtendedPoint ws;
  ws.n_sym = w.n_sym;
  ws.lambda = x(0);
  ws.u.a.assign(na > 0 ? (std::size_t)amodes.back() : 0, 0.0);
  for (int i = 0; i < na; ++i) {
    int k = amodes[i];
    ws.u.a[k - 1] = x(1 + i) * s2 / detail::kpi2_s<double>(k);
  }
  ws.v.a.assign(N, 0.0);
  for (int k = 1; k <= N; ++k) ws.v.a[k - 1] = x(na + k) * s2 / detail::kpi2_s<double>(k);
  ws.u = trimmed(ws.u);
  ws.v = trimmed(ws.v);
  return {ws, eta_of_slant(sigma, w, ell, ws)};
}

BranchBox branch_box(const Interval& rho, const Interval& K, const LipschitzBundle& bundle,
                     const Interval& eta, const Interval& norm_w_slant) {
  const double d_w = bundle.d_w, d_s = bundle.d_sigma;
  if (!(d_w > 0.0) || !(d_s > 0.0))
    throw BadInput("validation", "branch box needs positive ball radii");
  const Interval q23 = Interval(4.0) * sqr(K) * rho * bundle.M1;
  if (!(q23.hi() < 1.0))
    throw Infeasible("contraction fails: 4 K^2 rho M1 >= 1 (" + std::to_string(q23.hi()) + ")");
  const Interval r23 = Interval(2.0) * K * rho;
  if (!(r23.hi() < d_w))
    throw Infeasible("first correction 2 K rho = " + std::to_string(r23.hi()) +
                     " does not fit inside d_w = " + std::to_string(d_w));
  const BoxTerms t = box_terms(rho, K, bundle, eta, norm_w_slant);

  // Descending log grid, 40 points per decade; the floor tracks d_sigma so
  // that auto-chosen radii near machine precision still get a full search
  // window. The first feasible point maximizes delta_sigma; delta_w sits
  // mid-window.
  const double floor_ds = std::min(1e-12, d_s * 1e-8);
  const double lg0 = std::log10(d_s);
  for (int i = 0;; ++i) {
    double ds = (i == 0) ? d_s : std::pow(10.0, lg0 - (double)i / 40.0);
    if (ds > d_s) ds = d_s;
    if (ds < floor_ds && i > 0) break;
    const double lo_w = (t.C0 + t.C1 * Interval(ds) + t.C2 * sqr(Interval(ds))).hi();
    const double cap25_num = rnd::sub_down(1.0, (t.B25 * Interval(ds)).hi());
    if (cap25_num <= 0.0) continue;
    const double cap25 =
        t.A25.hi() > 0.0 ? rnd::div_down(cap25_num, t.A25.hi()) : d_w;
    const double cap24 = rnd::sub_down(d_w, (t.nw * Interval(ds)).hi());
    const double hi_w = std::min({cap25, cap24, d_w});
    if (!(hi_w > 0.0) || lo_w > hi_w) continue;
    const double dw = 0.5 * (lo_w + hi_w);
    if (!(dw > 0.0)) continue;
    if (box_eq24(t, ds, dw) && box_eq25(t, ds, dw) && box_eq26(t, ds, dw))
      return {ds, dw};
  }
  throw Infeasible("no (delta_sigma, delta_w) on the search grid satisfies the closure inequalities");
}

ValidationCertificate make_certificate(double sigma, const ExtendedPoint& w,
                                       const NormalizationFunctional& ell,
                                       const CertificateConfig& cfg) {
  if (!(cfg.trim_tol >= 0.0)) throw BadInput("validation", "trim_tol must be >= 0");
  if (cfg.d_w < 0.0 || cfg.d_sigma < 0.0) throw BadInput("validation", "radii must be >= 0");
  if (cfg.N < 0 || cfg.tail_N < 0) throw BadInput("validation", "N and tail_N must be >= 0");
  validate_point(w);
  if (!(sigma > 0.0)) throw BadInput("validation", "sigma must be positive");

  ValidationCertificate cert;
  cert.sigma_star = sigma;
  ExtendedPoint wt = w;
  wt.u = trim_small(w.u, cfg.trim_tol);
  wt.v = trim_small(w.v, cfg.trim_tol);
  if (cfg.N > 0) {
    // The certificate speaks about the P_N-projected candidate: a cutoff
    // below the candidate's support moves the dropped tail into the residual
    // instead of silently keeping the full point.
    wt.u = trimmed(project_PN(wt.u, cfg.N));
    wt.v = trimmed(project_PN(wt.v, cfg.N));
  }
  cert.w_star = wt;
  cert.ell_rep = materialized(ell.rep);
  {
    auto [base, P] = head_sizes(wt, ell, cfg.N, cfg.tail_N);
    cert.N = base;
    cert.tail_N = P;
  }

  using clock = std::chrono::steady_clock;
  auto last = clock::now();
  auto mark = [&](const char* name) {
    auto now = clock::now();
    cert.timings_ms.emplace_back(name, std::chrono::duration<double, std::milli>(now - last).count());
    last = now;
  };

  std::string stage;
  double dw = 0.0, ds = 0.0;
  try {
    stage = "scenario";
    if (wt.n_sym >= 2) cert.scenario = classify_kernel(iv_series(wt.v), wt.n_sym, 0.0);
    mark("scenario");

    stage = "residual";
    cert.rho = residual_rho(sigma, wt, ell);
    mark("residual");

    stage = "inverse";
    cert.K = inverse_K(sigma, wt, ell, cfg.N, cfg.tail_N);
    mark("inverse");

    stage = "lipschitz";
    dw = cfg.d_w > 0.0 ? cfg.d_w
                       : std::max(rnd::mul_up(4.0, rnd::mul_up(cert.K.hi(), cert.rho.hi())), 1e-15);
    ds = cfg.d_sigma > 0.0 ? cfg.d_sigma : dw;
    cert.bundle = lipschitz_bundle(sigma, wt, dw, ds);
    mark("lipschitz");

    stage = "slant";
    auto se = slant_and_eta(sigma, wt, ell);
    cert.w_slant = se.first;
    cert.eta = se.second;
    cert.norm_w_slant = triple_norm_x(cert.w_slant);
    mark("slant");

    stage = "box";
    cert.checks.contraction = (Interval(4.0) * sqr(cert.K) * cert.rho * cert.bundle.M1).hi() < 1.0;
    cert.checks.radius = (Interval(2.0) * cert.K * cert.rho).hi() < dw;
    BranchBox bb = branch_box(cert.rho, cert.K, cert.bundle, cert.eta, cert.norm_w_slant);
    cert.delta_sigma = bb.delta_sigma;
    cert.delta_w = bb.delta_w;
    const BoxTerms t = box_terms(cert.rho, cert.K, cert.bundle, cert.eta, cert.norm_w_slant);
    cert.checks.box_inside_ball = box_eq24(t, bb.delta_sigma, bb.delta_w);
    cert.checks.slope = box_eq25(t, bb.delta_sigma, bb.delta_w);
    cert.checks.closure = box_eq26(t, bb.delta_sigma, bb.delta_w);
    mark("box");
  } catch (const NumericalError& e) {
    cert.failure_stage = stage;
    cert.failure_what = e.what();
    cert.valid = false;
    return cert;
  }

  cert.valid = cert.checks.contraction && cert.checks.radius && cert.checks.box_inside_ball &&
               cert.checks.slope && cert.checks.closure && cert.scenario.has_value();
  if (!cert.valid && cert.failure_stage.empty()) {
    if (!cert.scenario.has_value()) {
      cert.failure_stage = "scenario";
      cert.failure_what = "kernel classification inconclusive";
    } else {
      cert.failure_stage = "box";
      cert.failure_what = "closure inequalities not satisfied";
    }
  }
  return cert;
}

}  // namespace dbcp
