#pragma once

// Diblock copolymer operator F(sigma, lambda, u) = -Delta(Delta u + lambda f(u))
// - lambda sigma u on (0,1) with Neumann conditions and zero average, together
// with every Frechet derivative the continuation/validation layers need.
// Everything acts on zero-mean cosine series; f(u) = u - u^3, mass offset 0.
//
// All nonlinear terms are computed with the exact cubic closure (result degree
// 3 deg u), so downstream residual bounds need no aliasing correction. Each
// nonlinearity sits under a Laplacian, which annihilates the constant mode, so
// the helpers below only ever need the zero-mean part of a product.

#include <optional>

#include "dbcp/errors.hpp"
#include "dbcp/spectral.hpp"

namespace dbcp {

struct ModelParams {
  double sigma;
  double lambda;
  std::optional<int> n_sym;  // expected T_n symmetry of the branch, if known

  // The mass offset of the physical model; zero throughout this code base.
  static constexpr double mu = 0.0;

  ModelParams(double sigma_, double lambda_, std::optional<int> n = std::nullopt)
      : sigma(sigma_), lambda(lambda_), n_sym(n) {
    if (!(sigma > 0.0)) throw BadInput("model", "sigma must be positive");
    if (n_sym && *n_sym < 2) throw BadInput("model", "n_sym must be >= 2");
  }
};

// Scalar evaluators of the nonlinearity and its derivatives. Valid for double
// and Interval alike; used by diagnostics and by the Lipschitz-constant layer.
struct Nonlinearity {
  template <class S>
  static S f(const S& u) {
    return u - u * u * u;
  }
  template <class S>
  static S f1(const S& u) {
    return S(1.0) - S(3.0) * (u * u);
  }
  template <class S>
  static S f2(const S& u) {
    return S(-6.0) * u;
  }
  template <class S>
  static S f3(const S&) {
    return S(-6.0);
  }
};

namespace detail {

template <class S>
inline S lift(double x) {
  if constexpr (is_interval_v<S>) {
    return Interval(x);
  } else {
    return x;
  }
}

// Zero-mean part of the pointwise product u*v*w for materialized inputs. The
// discarded mean is killed by the Laplacian every caller applies on top.
template <class S>
BasicCosineSeries<S> triple_series(const BasicCosineSeries<S>& u,
                                   const BasicCosineSeries<S>& v,
                                   const BasicCosineSeries<S>& w) {
  ProductResult<S> uv = product(u, v);
  ProductResult<S> uvw = product(uv.series, w);
  return uvw.series + scaled(w, uv.mean);
}

// Zero-mean part of f(u) = u - u^3 for a materialized input.
template <class S>
BasicCosineSeries<S> f_series(const BasicCosineSeries<S>& u) {
  return u - triple_series(u, u, u);
}

// Zero-mean part of f'(u) w = w - 3 u^2 w for materialized inputs.
template <class S>
BasicCosineSeries<S> fprime_times(const BasicCosineSeries<S>& u,
                                  const BasicCosineSeries<S>& w) {
  ProductResult<S> u2 = product(u, u);
  ProductResult<S> u2w = product(u2.series, w);
  return w - scaled(u2w.series + scaled(w, u2.mean), S(3.0));
}

}  // namespace detail

// F(sigma, lambda, u) = -Delta^2 u - lambda Delta f(u) - lambda sigma u.
template <class S>
BasicCosineSeries<S> F_apply(const ModelParams& p, const BasicCosineSeries<S>& u) {
  const S lam = detail::lift<S>(p.lambda);
  const S sig = detail::lift<S>(p.sigma);
  BasicCosineSeries<S> tmp;
  const BasicCosineSeries<S>& um = detail::mat_ref(u, tmp);
  return -laplacian(um, 2) - scaled(laplacian(detail::f_series(um), 1), lam) -
         scaled(um, lam * sig);
}

// D_u F[w] = -Delta^2 w - lambda Delta(f'(u) w) - lambda sigma w.
template <class S>
BasicCosineSeries<S> DuF_apply(const ModelParams& p, const BasicCosineSeries<S>& u,
                               const BasicCosineSeries<S>& w) {
  const S lam = detail::lift<S>(p.lambda);
  const S sig = detail::lift<S>(p.sigma);
  BasicCosineSeries<S> tu, tw;
  const BasicCosineSeries<S>& um = detail::mat_ref(u, tu);
  const BasicCosineSeries<S>& wm = detail::mat_ref(w, tw);
  return -laplacian(wm, 2) -
         scaled(laplacian(detail::fprime_times(um, wm), 1), lam) -
         scaled(wm, lam * sig);
}

// D_lambda F = -Delta f(u) - sigma u.
template <class S>
BasicCosineSeries<S> DlamF(const ModelParams& p, const BasicCosineSeries<S>& u) {
  const S sig = detail::lift<S>(p.sigma);
  BasicCosineSeries<S> tmp;
  const BasicCosineSeries<S>& um = detail::mat_ref(u, tmp);
  return -laplacian(detail::f_series(um), 1) - scaled(um, sig);
}

// D_sigma F = -lambda u.
template <class S>
BasicCosineSeries<S> DsigF(const ModelParams& p, const BasicCosineSeries<S>& u) {
  const S lam = detail::lift<S>(p.lambda);
  BasicCosineSeries<S> tmp;
  const BasicCosineSeries<S>& um = detail::mat_ref(u, tmp);
  return scaled(um, -lam);
}

// D_{lambda u} F[v] = -Delta(f'(u) v) - sigma v.
template <class S>
BasicCosineSeries<S> DlamuF_apply(const ModelParams& p, const BasicCosineSeries<S>& u,
                                  const BasicCosineSeries<S>& v) {
  const S sig = detail::lift<S>(p.sigma);
  BasicCosineSeries<S> tu, tv;
  const BasicCosineSeries<S>& um = detail::mat_ref(u, tu);
  const BasicCosineSeries<S>& vm = detail::mat_ref(v, tv);
  return -laplacian(detail::fprime_times(um, vm), 1) - scaled(vm, sig);
}

// D_{uu} F[v, w] = -Delta(lambda f''(u) v w) = 6 lambda Delta(u v w).
template <class S>
BasicCosineSeries<S> DuuF_apply(const ModelParams& p, const BasicCosineSeries<S>& u,
                                const BasicCosineSeries<S>& v,
                                const BasicCosineSeries<S>& w) {
  const S lam = detail::lift<S>(p.lambda);
  BasicCosineSeries<S> tu, tv, tw;
  const BasicCosineSeries<S>& um = detail::mat_ref(u, tu);
  const BasicCosineSeries<S>& vm = detail::mat_ref(v, tv);
  const BasicCosineSeries<S>& wm = detail::mat_ref(w, tw);
  return scaled(laplacian(detail::triple_series(um, vm, wm), 1), S(6.0) * lam);
}

// D_{uuu} F[v1, v2, v3] = 6 lambda Delta(v1 v2 v3); constant in u.
template <class S>
BasicCosineSeries<S> DuuuF_apply(const ModelParams& p,
                                 const BasicCosineSeries<S>& /*u*/,
                                 const BasicCosineSeries<S>& v1,
                                 const BasicCosineSeries<S>& v2,
                                 const BasicCosineSeries<S>& v3) {
  const S lam = detail::lift<S>(p.lambda);
  BasicCosineSeries<S> t1, t2, t3;
  const BasicCosineSeries<S>& m1 = detail::mat_ref(v1, t1);
  const BasicCosineSeries<S>& m2 = detail::mat_ref(v2, t2);
  const BasicCosineSeries<S>& m3 = detail::mat_ref(v3, t3);
  return scaled(laplacian(detail::triple_series(m1, m2, m3), 1), S(6.0) * lam);
}

}  // namespace dbcp
