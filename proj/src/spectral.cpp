#include "dbcp/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace dbcp {

double eval_at(const CosineSeries& u, double x) {
  CosineSeries tmp;
  const CosineSeries& m = detail::mat_ref(u, tmp);
  double s = 0.0;
  for (std::size_t i = 0; i < m.a.size(); ++i)
    if (m.a[i] != 0.0) s += m.a[i] * std::cos((double)(i + 1) * M_PI * x);
  return s;
}

Interval eval_at(const CosineSeries& u, const Interval& x) {
  CosineSeries tmp;
  const CosineSeries& m = detail::mat_ref(u, tmp);
  Interval s(0.0);
  Interval pix = pi_interval() * x;
  for (std::size_t i = 0; i < m.a.size(); ++i)
    if (m.a[i] != 0.0) s += Interval(m.a[i]) * iv_cos(Interval((double)(i + 1)) * pix);
  return s;
}

Interval eval_at(const ICosineSeries& u, const Interval& x) {
  ICosineSeries tmp;
  const ICosineSeries& m = detail::mat_ref(u, tmp);
  Interval s(0.0);
  Interval pix = pi_interval() * x;
  for (std::size_t i = 0; i < m.a.size(); ++i)
    if (!detail::is_zero_s(m.a[i])) s += m.a[i] * iv_cos(Interval((double)(i + 1)) * pix);
  return s;
}

double eval_trig(const TrigSeries2& v, double x) {
  double r = 0.0;
  for (std::size_t i = 0; i < v.c.size(); ++i) {
    double t = (double)(i + 1) * M_PI * x;
    r += v.c[i] * std::cos(t) + v.s[i] * std::sin(t);
  }
  return r;
}

double norm_L2_period2(const TrigSeries2& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.c.size(); ++i) s += v.c[i] * v.c[i] + v.s[i] * v.s[i];
  return std::sqrt(s);
}

TrigSeries2 embed_even(const CosineSeries& u) {
  CosineSeries m = materialized(u);
  TrigSeries2 out;
  out.c = m.a;
  out.s.assign(m.a.size(), 0.0);
  return out;
}

CosineSeries restrict_even(const TrigSeries2& v, double tol) {
  double worst = 0.0;
  for (double sk : v.s) worst = std::max(worst, std::fabs(sk));
  if (worst > tol) throw NotEvenError("sine part above tolerance in even restriction");
  CosineSeries out;
  out.a = v.c;
  return out;
}

}  // namespace dbcp
