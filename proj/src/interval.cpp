#include "dbcp/interval.hpp"

#include <algorithm>
#include <vector>

namespace dbcp {

namespace {

thread_local std::vector<Interval> g_kpi2{Interval(0.0)};
thread_local std::vector<Interval> g_kpi4{Interval(0.0)};

void extend_caches(int k) {
  const Interval pi = pi_interval();
  while ((int)g_kpi2.size() <= k) {
    int j = (int)g_kpi2.size();
    Interval jpi = Interval((double)j) * pi;
    Interval jpi2 = sqr(jpi);
    g_kpi2.push_back(jpi2);
    g_kpi4.push_back(sqr(jpi2));
  }
}

}  // namespace

const Interval& kpi2(int k) {
  if (k < 0) throw InvalidInterval("kpi2: negative wave number");
  if (k >= (int)g_kpi2.size()) extend_caches(k);
  return g_kpi2[k];
}

const Interval& kpi4(int k) {
  if (k < 0) throw InvalidInterval("kpi4: negative wave number");
  if (k >= (int)g_kpi4.size()) extend_caches(k);
  return g_kpi4[k];
}

namespace {

// Enclosures of 1/(2j)! for j = 1..15, built once per thread by exact interval
// products (integers up to 2^53 are exact doubles, the rest widens itself).
const std::vector<Interval>& inv_even_factorials() {
  thread_local std::vector<Interval> table = [] {
    std::vector<Interval> t;
    Interval fact(1.0);
    for (int m = 1; m <= 30; ++m) {
      fact *= Interval((double)m);
      if (m % 2 == 0) t.push_back(Interval(1.0) / fact);
    }
    return t;
  }();
  return table;
}

}  // namespace

Interval iv_cos(const Interval& theta) {
  const Interval box = Interval(-1.0, 1.0);
  const Interval two_pi = Interval(2.0) * pi_interval();
  if (theta.width() >= two_pi.lo()) return box;

  // Shift by the nearest integer multiple of 2*pi; the multiple is exact,
  // the product is an interval, so the reduced argument stays an enclosure.
  double n = std::nearbyint(theta.mid() / (2.0 * M_PI));
  Interval x = theta - Interval(n) * two_pi;
  double xm = x.mag();
  if (xm > 4.0) return box;  // width nearly a period after reduction

  // cos x = sum_{j=0..15} (-1)^j x^(2j)/(2j)! + R, |R| <= |x|^32/32!
  // (|x| <= 4 gives |R| <= 4^32/32! ~ 7e-17; typical reduced arguments are
  // far smaller).
  const auto& invf = inv_even_factorials();
  Interval t = sqr(x);
  Interval acc = (15 % 2 == 0) ? invf[14] : -invf[14];
  for (int j = 14; j >= 1; --j) {
    Interval c = (j % 2 == 0) ? invf[j - 1] : -invf[j - 1];
    acc = acc * t + c;
  }
  Interval result = Interval(1.0) + acc * t;

  double x2_up = rnd::mul_up(xm, xm);
  double pow_up = 1.0;
  for (int m = 0; m < 16; ++m) pow_up = rnd::mul_up(pow_up, x2_up);
  double fact32_up = 1.0;
  for (int m = 2; m <= 32; ++m) fact32_up = rnd::mul_up(fact32_up, (double)m);
  double rem = rnd::div_up(pow_up, fact32_up);
  result = result + Interval(-rem, rem);
  return intersect(result, box);
}

namespace {

Interval eval_cubic(double c0, double c1, double c2, double c3, const Interval& x) {
  return ((Interval(c3) * x + Interval(c2)) * x + Interval(c1)) * x + Interval(c0);
}

}  // namespace

Interval iv_poly_range(double c0, double c1, double c2, double c3, const Interval& dom) {
  Interval lo_end(dom.lo());
  Interval hi_end(dom.hi());
  Interval range = hull(eval_cubic(c0, c1, c2, c3, lo_end), eval_cubic(c0, c1, c2, c3, hi_end));

  auto consider = [&](const Interval& root) {
    if (root.hi() < dom.lo() || root.lo() > dom.hi()) return;
    Interval clipped = intersect(root, dom);
    range = hull(range, eval_cubic(c0, c1, c2, c3, clipped));
  };

  // Critical points: 3 c3 x^2 + 2 c2 x + c1 = 0.
  if (c3 != 0.0) {
    Interval a = Interval(3.0) * Interval(c3);
    Interval b = Interval(2.0) * Interval(c2);
    Interval disc = sqr(b) - Interval(4.0) * a * Interval(c1);
    if (disc.hi() >= 0.0) {
      Interval sd = sqrt(intersect(disc, Interval(0.0, rnd::kInf)));
      consider((-b + sd) / (Interval(2.0) * a));
      consider((-b - sd) / (Interval(2.0) * a));
    }
  } else if (c2 != 0.0) {
    consider(-Interval(c1) / (Interval(2.0) * Interval(c2)));
  }
  return range;
}

IntervalVector iv_matvec(const IntervalMatrix& m, const IntervalVector& x) {
  if (m.cols != x.size()) throw DimError("iv_matvec: dimension mismatch");
  IntervalVector y(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    Interval acc(0.0);
    for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Interval iv_weighted_opnorm_bound(const IntervalMatrix& m,
                                  const std::vector<double>& win,
                                  const std::vector<double>& wout) {
  if (win.size() != m.cols || wout.size() != m.rows)
    throw DimError("iv_weighted_opnorm_bound: weight dimensions");
  for (double w : win)
    if (!(w > 0)) throw BadInput("linalg", "nonpositive input weight");
  for (double w : wout)
    if (!(w > 0)) throw BadInput("linalg", "nonpositive output weight");
  Interval sum(0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      Interval scaled = m(i, j) * Interval(wout[i]) / Interval(win[j]);
      sum += sqr(Interval(scaled.mag()));
    }
  return sqrt(sum);
}

}  // namespace dbcp
