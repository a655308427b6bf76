#pragma once

// Coefficient-space algebra for zero-mean cosine series on (0,1):
//   u(x) = sum_{k>=1} a_k cos(k pi x)
// with exact products (no aliasing), the X/Y/L2 norms, truncation, and the
// 2-periodic trigonometric representation used for the shift symmetry.
// Works over double or Interval coefficients through the same templates.

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "dbcp/errors.hpp"
#include "dbcp/interval.hpp"

namespace dbcp {

namespace detail {

template <class S>
inline constexpr bool is_interval_v = std::is_same_v<S, Interval>;

template <class S>
S sqrt_s(const S& x) {
  if constexpr (is_interval_v<S>)
    return dbcp::sqrt(x);
  else
    return std::sqrt(x);
}

template <class S>
S abs_s(const S& x) {
  if constexpr (is_interval_v<S>)
    return dbcp::abs(x);
  else
    return std::fabs(x);
}

template <class S>
bool is_zero_s(const S& x) {
  if constexpr (is_interval_v<S>)
    return x.is_point() && x.lo() == 0.0;
  else
    return x == 0.0;
}

template <class S>
S kpi2_s(int k) {
  if constexpr (is_interval_v<S>) {
    return kpi2(k);
  } else {
    double t = (double)k * M_PI;
    return t * t;
  }
}

template <class S>
S kpi4_s(int k) {
  if constexpr (is_interval_v<S>) {
    return kpi4(k);
  } else {
    double t2 = kpi2_s<double>(k);
    return t2 * t2;
  }
}

}  // namespace detail

// lap is a pending power of the Laplacian, applied lazily:
//   value(x) = sum_k a_k * (-(k pi)^2)^lap * cos(k pi x).
// Keeping the symbol unexpanded makes laplacian(p) exactly invertible
// (composition is integer addition); coefficients are scaled only when an
// operation needs plain values (materialize).
template <class S>
struct BasicCosineSeries {
  std::vector<S> a;  // a[i] belongs to wave number k = i+1; no k=0 term
  int lap = 0;

  BasicCosineSeries() = default;
  explicit BasicCosineSeries(std::size_t modes) : a(modes) {}
  std::size_t modes() const { return a.size(); }
};

using CosineSeries = BasicCosineSeries<double>;
using ICosineSeries = BasicCosineSeries<Interval>;

template <class S>
BasicCosineSeries<S> materialized(const BasicCosineSeries<S>& u) {
  if (u.lap == 0) return u;
  BasicCosineSeries<S> out((std::size_t)u.a.size());
  for (std::size_t i = 0; i < u.a.size(); ++i) {
    int k = (int)i + 1;
    S v = u.a[i];
    int p = u.lap;
    for (; p >= 2; p -= 2) v = v * detail::kpi4_s<S>(k);
    for (; p <= -2; p += 2) v = v / detail::kpi4_s<S>(k);
    if (p == 1) v = v * (-detail::kpi2_s<S>(k));
    if (p == -1) v = v / (-detail::kpi2_s<S>(k));
    out.a[i] = v;
  }
  return out;
}

namespace detail {
// Borrow u when it is already materialized, otherwise fill tmp.
template <class S>
const BasicCosineSeries<S>& mat_ref(const BasicCosineSeries<S>& u, BasicCosineSeries<S>& tmp) {
  if (u.lap == 0) return u;
  tmp = materialized(u);
  return tmp;
}
}  // namespace detail

template <class S>
BasicCosineSeries<S> trimmed(const BasicCosineSeries<S>& u) {
  BasicCosineSeries<S> out = u;
  while (!out.a.empty() && detail::is_zero_s(out.a.back())) out.a.pop_back();
  return out;
}

template <class S>
bool operator==(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  BasicCosineSeries<S> a = trimmed(materialized(u));
  BasicCosineSeries<S> b = trimmed(materialized(v));
  if (a.a.size() != b.a.size()) return false;
  for (std::size_t i = 0; i < a.a.size(); ++i)
    if (a.a[i] != b.a[i]) return false;
  return true;
}

template <class S>
bool operator!=(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  return !(u == v);
}

// Addition keeps the pending symbol when both sides agree (exact); otherwise
// both sides are materialized first.
template <class S>
BasicCosineSeries<S> operator+(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  if (u.lap != v.lap) return materialized(u) + materialized(v);
  BasicCosineSeries<S> out(std::max(u.a.size(), v.a.size()));
  out.lap = u.lap;
  for (std::size_t i = 0; i < out.a.size(); ++i) {
    S s = S(0.0);
    if (i < u.a.size()) s = s + u.a[i];
    if (i < v.a.size()) s = s + v.a[i];
    out.a[i] = s;
  }
  return out;
}

template <class S>
BasicCosineSeries<S> operator-(const BasicCosineSeries<S>& u) {
  BasicCosineSeries<S> out = u;
  for (auto& c : out.a) c = -c;
  return out;
}

template <class S>
BasicCosineSeries<S> operator-(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  return u + (-v);
}

template <class S>
BasicCosineSeries<S> scaled(const BasicCosineSeries<S>& u, const S& c) {
  BasicCosineSeries<S> out = u;
  for (auto& x : out.a) x = x * c;
  return out;
}

// a_k -> (-(k pi)^2)^power a_k, deferred via the symbol exponent.
template <class S>
BasicCosineSeries<S> laplacian(const BasicCosineSeries<S>& u, int power) {
  if (power < -2 || power > 2 || power == 0)
    throw BadInput("spectral", "laplacian power must be in {-2,-1,1,2}");
  BasicCosineSeries<S> out = u;
  out.lap += power;
  return out;
}

template <class S>
BasicCosineSeries<S> project_PN(const BasicCosineSeries<S>& u, int N) {
  if (N < 1) throw BadInput("spectral", "projection order must be >= 1");
  BasicCosineSeries<S> out = u;
  if (out.a.size() > (std::size_t)N) out.a.resize((std::size_t)N);
  return out;
}

// Exact product via cos(a)cos(b) = (cos(a+b) + cos(a-b))/2. The k=0 part
// (from equal wave numbers) is returned separately; the caller decides
// whether it cancels or is annihilated by a Laplacian.
template <class S>
struct ProductResult {
  BasicCosineSeries<S> series;
  S mean = S(0.0);
};

template <class S>
ProductResult<S> product(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  BasicCosineSeries<S> tu, tv;
  const BasicCosineSeries<S>& a = detail::mat_ref(u, tu);
  const BasicCosineSeries<S>& b = detail::mat_ref(v, tv);
  ProductResult<S> out;
  if (a.a.empty() || b.a.empty()) return out;
  out.series.a.assign(a.a.size() + b.a.size(), S(0.0));
  const S half(0.5);
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    if (detail::is_zero_s(a.a[i])) continue;
    for (std::size_t j = 0; j < b.a.size(); ++j) {
      S t = a.a[i] * b.a[j] * half;
      out.series.a[i + j + 1] += t;  // wave number (i+1)+(j+1)
      if (i == j)
        out.mean += t;
      else
        out.series.a[(i > j ? i - j : j - i) - 1] += t;
    }
  }
  return out;
}

// <u,v>_X = sum a_k b_k (k pi)^4 / 2 and <u,v>_Y = sum a_k b_k / (k pi)^4 / 2,
// the inner products inducing normX / normY.
template <class S>
S inner_x(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  BasicCosineSeries<S> tu, tv;
  const BasicCosineSeries<S>& a = detail::mat_ref(u, tu);
  const BasicCosineSeries<S>& b = detail::mat_ref(v, tv);
  S s(0.0);
  std::size_t m = std::min(a.a.size(), b.a.size());
  for (std::size_t i = 0; i < m; ++i) s = s + a.a[i] * b.a[i] * detail::kpi4_s<S>((int)i + 1);
  return s * S(0.5);
}

template <class S>
S inner_y(const BasicCosineSeries<S>& u, const BasicCosineSeries<S>& v) {
  BasicCosineSeries<S> tu, tv;
  const BasicCosineSeries<S>& a = detail::mat_ref(u, tu);
  const BasicCosineSeries<S>& b = detail::mat_ref(v, tv);
  S s(0.0);
  std::size_t m = std::min(a.a.size(), b.a.size());
  for (std::size_t i = 0; i < m; ++i) s = s + a.a[i] * b.a[i] / detail::kpi4_s<S>((int)i + 1);
  return s * S(0.5);
}

template <class S>
struct Norms {
  S normX, normY, normL2, supBound;
};

template <class S>
Norms<S> norms(const BasicCosineSeries<S>& u) {
  BasicCosineSeries<S> tmp;
  const BasicCosineSeries<S>& m = detail::mat_ref(u, tmp);
  S x2(0.0), y2(0.0), l2(0.0), sup(0.0);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    int k = (int)i + 1;
    S s;
    if constexpr (detail::is_interval_v<S>)
      s = sqr(m.a[i]);  // tight square, no sign crossing blowup
    else
      s = m.a[i] * m.a[i];
    x2 = x2 + s * detail::kpi4_s<S>(k);
    y2 = y2 + s / detail::kpi4_s<S>(k);
    l2 = l2 + s;
    sup = sup + detail::abs_s(m.a[i]);
  }
  const S half(0.5);
  return {detail::sqrt_s(x2 * half), detail::sqrt_s(y2 * half), detail::sqrt_s(l2 * half), sup};
}

// Point evaluation. The interval overloads give enclosures (coefficients
// and/or abscissa may be intervals).
double eval_at(const CosineSeries& u, double x);
Interval eval_at(const CosineSeries& u, const Interval& x);
Interval eval_at(const ICosineSeries& u, const Interval& x);
inline Interval eval_at(const ICosineSeries& u, double x) { return eval_at(u, Interval(x)); }

// 2-periodic trigonometric series sum c_k cos(k pi x) + s_k sin(k pi x),
// zero mean over (0,2); the host space for the shift operator.
struct TrigSeries2 {
  std::vector<double> c, s;
  std::size_t modes() const { return c.size(); }
};

double eval_trig(const TrigSeries2& v, double x);
// sqrt(sum c_k^2 + s_k^2): each basis function has L2(0,2) norm 1.
double norm_L2_period2(const TrigSeries2& v);

TrigSeries2 embed_even(const CosineSeries& u);
CosineSeries restrict_even(const TrigSeries2& v, double tol = 1e-12);

}  // namespace dbcp
