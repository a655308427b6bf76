#pragma once

// Extended bifurcation system
//   Fe(sigma, lambda, u, v) = ( ell(v) - 1, F(sigma,lambda,u), DuF(sigma,lambda,u)[v] )
// whose nondegenerate zeros are the symmetry-breaking pitchfork points: u is
// the equilibrium (restricted to the fixed-point class A of T_n), v spans the
// kernel, ell normalizes v. Newton on the Galerkin truncation refines a
// detection record into the candidate (lambda*, u*, v*).
//
// The assembled derivative uses X/Y-orthonormal coordinates: domain basis
// tangents sqrt(2) (j pi)^-2 cos(j pi x) (unit X-norm), image rows divided by
// (k pi)^2 sqrt(2). Euclidean norms of coordinate vectors then equal the
// product norms (lam^2 + |u|_X^2 + |v|_X^2)^1/2 resp. the Y-side analogue,
// so matrix 2-norms and rcond speak directly about the operator.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "dbcp/equilibria.hpp"
#include "dbcp/model.hpp"
#include "dbcp/spectral.hpp"
#include "dbcp/symmetry.hpp"

namespace dbcp {

template <class S>
struct BasicExtendedPoint {
  double lambda = 0.0;
  BasicCosineSeries<S> u;  // support inside class A of n_sym
  BasicCosineSeries<S> v;  // full space
  int n_sym = 0;
};
using ExtendedPoint = BasicExtendedPoint<double>;
using IExtendedPoint = BasicExtendedPoint<Interval>;

// ell(w) = <rep, w>_X / <rep, rep>_X; ell(rep) = 1 bit for bit because both
// sides evaluate the identical sum.
template <class S>
struct BasicNormalization {
  BasicCosineSeries<S> rep;
  S rep_x2 = S(0.0);
  S operator()(const BasicCosineSeries<S>& w) const { return inner_x(rep, w) / rep_x2; }
};
using NormalizationFunctional = BasicNormalization<double>;

NormalizationFunctional make_normalization(const CosineSeries& phi);
BasicNormalization<Interval> lift_normalization(const NormalizationFunctional& ell);

template <class S>
struct BasicFeTriple {
  S r1 = S(0.0);
  BasicCosineSeries<S> r2;  // equilibrium equation, lies in Y_a
  BasicCosineSeries<S> r3;  // kernel equation
};
using FeTriple = BasicFeTriple<double>;
using IFeTriple = BasicFeTriple<Interval>;

// Class-A wave numbers (odd multiples of n) up to N, ascending.
std::vector<int> classA_modes(int n_sym, int N);

// The extended operator itself; templated so the validation layer can
// re-evaluate a float candidate in interval arithmetic (lambda and sigma stay
// point values held by ModelParams).
template <class S>
BasicFeTriple<S> Fe_eval(const ModelParams& p, const BasicCosineSeries<S>& u,
                         const BasicCosineSeries<S>& v, const BasicNormalization<S>& ell) {
  BasicFeTriple<S> t;
  t.r1 = ell(v) - S(1.0);
  t.r2 = materialized(F_apply(p, u));
  t.r3 = materialized(DuF_apply(p, u, v));
  return t;
}

FeTriple Fe_apply(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell);

// Directional derivative of Fe at w in direction (lam_t, u_t, v_t):
//   ( ell(v_t),
//     lam_t DlamF(u) + DuF[u_t],
//     lam_t DlamuF[v] + DuuF[v, u_t] + DuF[v_t] ).
FeTriple DwFe_matvec(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                     double lam_t, const CosineSeries& u_t, const CosineSeries& v_t);

// (0, -lambda u, -lambda v): the sigma-derivative driving the branch boxes.
FeTriple DsigmaFe(double sigma, const ExtendedPoint& w);

// Dense derivative in the orthonormal coordinates described above; dimension
// 1 + #classA_modes(n_sym, N) + N, columns ordered [lambda | u | v].
Eigen::MatrixXd assemble_DwFe(double sigma, const ExtendedPoint& w,
                              const NormalizationFunctional& ell, int N);

// Y-side product norm of the Galerkin-projected residual triple at w.
double extended_residual_norm(double sigma, const ExtendedPoint& w,
                              const NormalizationFunctional& ell, int N);

// Newton on the truncated extended system. u keeps exact zeros off class A
// (those coefficients are not unknowns). iters_out, when given, receives the
// number of steps taken.
ExtendedPoint newton_extended(double sigma, const ExtendedPoint& w_init,
                              const NormalizationFunctional& ell, int N, double tol = 1e-12,
                              int maxit = 50, int* iters_out = nullptr);

// Seed (lambda0, u0, phi0) and ell = normalization against phi0 from a
// detection record; u0 is masked to class A (detection already stores exact
// zeros there, the mask makes hand-built records honest).
std::pair<ExtendedPoint, NormalizationFunctional> seed_from_record(const BifurcationRecord& rec);

}  // namespace dbcp
