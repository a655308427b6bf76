#pragma once

// Self-contained interval arithmetic on IEEE doubles. No rounding-mode switches:
// every elementary result is computed round-to-nearest, the rounding residual is
// recovered exactly (TwoSum for +/-, fma for *, /, sqrt), and an endpoint is
// widened by one ulp only when the residual proves the rounded value is on the
// wrong side. Exact results therefore stay exact (integer arithmetic, powers of
// two), and every enclosure is at most one ulp wider than optimal per endpoint.
//
// Requires -ffp-contract=off: the residual formulas are only exact when the
// compiler emits each multiply and add as written.

#include <cmath>
#include <limits>
#include <vector>

#include "dbcp/errors.hpp"

namespace dbcp {

namespace rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Magnitudes beyond these give up on tightness and widen unconditionally;
// the model's numbers live many decades inside this range.
inline constexpr double kHuge = 1e300;
inline constexpr double kTiny = 1e-290;

inline double next_up(double x) { return std::nextafter(x, kInf); }
inline double next_down(double x) { return std::nextafter(x, -kInf); }

// Exact error of the rounded sum s = fl(a+b) (TwoSum). a+b = s + err.
inline double two_sum_err(double a, double b, double s) {
  double bp = s - a;
  double ap = s - bp;
  return (a - ap) + (b - bp);
}

inline double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s > 0 ? std::numeric_limits<double>::max() : -kInf;
  if (std::fabs(s) >= kHuge) return next_down(s);
  double e = two_sum_err(a, b, s);
  return e < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s > 0 ? kInf : -std::numeric_limits<double>::max();
  if (std::fabs(s) >= kHuge) return next_up(s);
  double e = two_sum_err(a, b, s);
  return e > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// a*b = p + fma(a,b,-p) exactly (barring over/underflow).
// A product that underflows all the way to zero (|ab| below half the smallest
// subnormal) leaves no usable residual: fma underflows too. Step one subnormal
// ulp away from zero instead.
inline bool underflowed_to_zero(double p, double a, double b) {
  return p == 0.0 && a != 0.0 && b != 0.0;
}

inline double mul_down(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p > 0 ? std::numeric_limits<double>::max() : -kInf;
  if (std::fabs(p) >= kHuge || (p != 0 && std::fabs(p) <= kTiny) || underflowed_to_zero(p, a, b))
    return next_down(p);
  double e = std::fma(a, b, -p);
  return e < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p > 0 ? kInf : -std::numeric_limits<double>::max();
  if (std::fabs(p) >= kHuge || (p != 0 && std::fabs(p) <= kTiny) || underflowed_to_zero(p, a, b))
    return next_up(p);
  double e = std::fma(a, b, -p);
  return e > 0 ? next_up(p) : p;
}

// Division residue a - q*b is exactly representable for q = fl(a/b); its sign
// against b tells which side q is on.
inline double div_down(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q)) return q > 0 ? std::numeric_limits<double>::max() : -kInf;
  if (std::fabs(q) >= kHuge || (q != 0 && std::fabs(q) <= kTiny) || std::fabs(a) >= kHuge)
    return next_down(q);
  double r = std::fma(-q, b, a);  // exact: a - q*b
  bool true_above = r != 0 && ((r > 0) == (b > 0));
  return (r != 0 && !true_above) ? next_down(q) : q;
}

inline double div_up(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q)) return q > 0 ? kInf : -std::numeric_limits<double>::max();
  if (std::fabs(q) >= kHuge || (q != 0 && std::fabs(q) <= kTiny) || std::fabs(a) >= kHuge)
    return next_up(q);
  double r = std::fma(-q, b, a);
  bool true_above = r != 0 && ((r > 0) == (b > 0));
  return true_above ? next_up(q) : q;
}

// IEEE sqrt is correctly rounded; fma(r,r,-x) has the sign of r^2 - x.
inline double sqrt_down(double x) {
  double r = std::sqrt(x);
  double e = std::fma(r, r, -x);
  return e > 0 ? next_down(r) : r;
}

inline double sqrt_up(double x) {
  double r = std::sqrt(x);
  double e = std::fma(r, r, -x);
  return e < 0 ? next_up(r) : r;
}

}  // namespace rnd

class Interval {
public:
  Interval() : lo_(0.0), hi_(0.0) {}
  Interval(double x) : lo_(x), hi_(x) {
    if (std::isnan(x)) throw InvalidInterval("NaN endpoint");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw InvalidInterval("bad endpoints");
  }

  static Interval hull(double a, double b) {
    return a <= b ? Interval(a, b) : Interval(b, a);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double rad() const {  // upper bound of the true radius
    double m = mid();
    return std::max(rnd::sub_up(hi_, m), rnd::sub_up(m, lo_));
  }
  double width() const { return rnd::sub_up(hi_, lo_); }
  bool is_point() const { return lo_ == hi_; }

  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  double mig() const {
    if (contains(0.0)) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
  }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool excludes_zero() const { return lo_ > 0.0 || hi_ < 0.0; }

  bool operator==(const Interval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
  bool operator!=(const Interval& o) const { return !(*this == o); }

  Interval operator-() const { return Interval(-hi_, -lo_); }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(rnd::add_down(a.lo_, b.lo_), rnd::add_up(a.hi_, b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(rnd::sub_down(a.lo_, b.hi_), rnd::sub_up(a.hi_, b.lo_));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    double lo = std::min(std::min(rnd::mul_down(a.lo_, b.lo_), rnd::mul_down(a.lo_, b.hi_)),
                         std::min(rnd::mul_down(a.hi_, b.lo_), rnd::mul_down(a.hi_, b.hi_)));
    double hi = std::max(std::max(rnd::mul_up(a.lo_, b.lo_), rnd::mul_up(a.lo_, b.hi_)),
                         std::max(rnd::mul_up(a.hi_, b.lo_), rnd::mul_up(a.hi_, b.hi_)));
    return Interval(lo, hi);
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains(0.0)) throw DivByZeroInterval("denominator straddles zero");
    double lo = std::min(std::min(rnd::div_down(a.lo_, b.lo_), rnd::div_down(a.lo_, b.hi_)),
                         std::min(rnd::div_down(a.hi_, b.lo_), rnd::div_down(a.hi_, b.hi_)));
    double hi = std::max(std::max(rnd::div_up(a.lo_, b.lo_), rnd::div_up(a.lo_, b.hi_)),
                         std::max(rnd::div_up(a.hi_, b.lo_), rnd::div_up(a.hi_, b.hi_)));
    return Interval(lo, hi);
  }

private:
  double lo_, hi_;
};

inline Interval sqr(const Interval& x) {
  if (x.lo() >= 0.0) return Interval(rnd::mul_down(x.lo(), x.lo()), rnd::mul_up(x.hi(), x.hi()));
  if (x.hi() <= 0.0) return Interval(rnd::mul_down(x.hi(), x.hi()), rnd::mul_up(x.lo(), x.lo()));
  double m = x.mag();
  return Interval(0.0, rnd::mul_up(m, m));
}

inline Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw DivByZeroInterval("sqrt of interval with negative part");
  return Interval(rnd::sqrt_down(x.lo()), rnd::sqrt_up(x.hi()));
}

inline Interval abs(const Interval& x) { return Interval(x.mig(), x.mag()); }

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline Interval intersect(const Interval& a, const Interval& b) {
  double lo = std::max(a.lo(), b.lo());
  double hi = std::min(a.hi(), b.hi());
  if (lo > hi) throw InvalidInterval("empty intersection");
  return Interval(lo, hi);
}

// M_PI is the double nearest pi and lies below it
// (pi = 3.14159265358979323846..., M_PI = 3.14159265358979311600...).
inline Interval pi_interval() {
  return Interval(M_PI, rnd::next_up(M_PI));
}

// Cached enclosures of (k*pi)^2 and (k*pi)^4; per-thread so reads need no locks.
const Interval& kpi2(int k);
const Interval& kpi4(int k);

// Enclosure of cos on an interval argument: reduce by the nearest multiple of
// 2*pi, then Taylor with explicit remainder. Intended for narrow arguments
// (point evaluations); arguments wider than a period fall back to [-1,1].
Interval iv_cos(const Interval& theta);

// Enclosure of the exact range of c0 + c1 x + c2 x^2 + c3 x^3 over dom,
// from endpoint and critical-point values (not naive interval evaluation).
Interval iv_poly_range(double c0, double c1, double c2, double c3, const Interval& dom);

// --- small dense interval containers -------------------------------------

struct IntervalVector {
  std::vector<Interval> v;
  IntervalVector() = default;
  explicit IntervalVector(std::size_t n) : v(n) {}
  std::size_t size() const { return v.size(); }
  Interval& operator[](std::size_t i) { return v[i]; }
  const Interval& operator[](std::size_t i) const { return v[i]; }
};

struct IntervalMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Interval> a;  // row-major
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Interval& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

IntervalVector iv_matvec(const IntervalMatrix& m, const IntervalVector& x);

// Upper bound of the weighted operator 2-norm sup ||diag(wout) M diag(win)^-1||_2,
// computed as the Frobenius norm of the scaled magnitude matrix (documented
// choice: Frobenius dominates the spectral norm). Weights must be positive.
Interval iv_weighted_opnorm_bound(const IntervalMatrix& m,
                                  const std::vector<double>& win,
                                  const std::vector<double>& wout);

}  // namespace dbcp
