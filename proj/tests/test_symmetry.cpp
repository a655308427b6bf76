#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dbcp/errors.hpp"
#include "dbcp/spectral.hpp"
#include "dbcp/symmetry.hpp"

using dbcp::ClassTag;
using dbcp::CosineSeries;
using dbcp::ICosineSeries;
using dbcp::Interval;

namespace {

CosineSeries mono(int k, double v) {
  CosineSeries u((std::size_t)k);
  u.a[(std::size_t)k - 1] = v;
  return u;
}

CosineSeries random_series(std::mt19937_64& gen, int modes, double amp = 1.0) {
  std::uniform_real_distribution<double> d(-amp, amp);
  CosineSeries u((std::size_t)modes);
  for (auto& c : u.a) c = d(gen);
  return u;
}

ICosineSeries lift(const CosineSeries& u) {
  ICosineSeries out(u.a.size());
  out.lap = u.lap;
  for (std::size_t i = 0; i < u.a.size(); ++i) out.a[i] = Interval(u.a[i]);
  return out;
}

double xdot(const CosineSeries& u, const CosineSeries& v) {
  double s = 0.0;
  std::size_t m = std::min(u.a.size(), v.a.size());
  for (std::size_t i = 0; i < m; ++i) {
    double t = (double)(i + 1) * M_PI;
    double t4 = (t * t) * (t * t);
    s += u.a[i] * v.a[i] * t4 * 0.5;
  }
  return s;
}

}  // namespace

TEST_CASE("class_of matches the operator-level annihilators") {
  // The operator action is the ground truth: for each unit mode, exactly the
  // polynomial of its class annihilates it, and the other two stay O(1).
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k <= 60; ++k) {
      ClassTag tag = dbcp::class_of(k, n);
      dbcp::TrigSeries2 v = dbcp::embed_even(mono(k, 1.0));
      for (ClassTag t : {ClassTag::A, ClassTag::B, ClassTag::C}) {
        double r = dbcp::annihilator_residual(v, n, t);
        if (t == tag)
          CHECK(r <= 1e-12);
        else
          CHECK(r >= 0.3);
      }
    }
  }
}

TEST_CASE("class_of explicit values") {
  CHECK(dbcp::class_of(3, 5) == ClassTag::B);
  CHECK(dbcp::class_of(4, 5) == ClassTag::C);
  CHECK(dbcp::class_of(5, 5) == ClassTag::A);
  CHECK(dbcp::class_of(15, 5) == ClassTag::A);
  // Even multiples of n are not fixed points: T_n acts there as -1, which
  // m_c kills for odd n and m_b kills for even n.
  CHECK(dbcp::class_of(10, 5) == ClassTag::C);
  CHECK(dbcp::class_of(20, 5) == ClassTag::C);
  CHECK(dbcp::class_of(8, 4) == ClassTag::B);
  CHECK(dbcp::class_of(4, 4) == ClassTag::A);
  CHECK(dbcp::class_of(12, 4) == ClassTag::A);
  CHECK(dbcp::class_of(2, 4) == ClassTag::B);
  CHECK(dbcp::class_of(1, 4) == ClassTag::C);
  CHECK_THROWS_AS(dbcp::class_of(0, 5), dbcp::BadInput);
  CHECK_THROWS_AS(dbcp::class_of(3, 0), dbcp::BadInput);
}

TEST_CASE("classes partition the wave numbers") {
  for (int n = 2; n <= 12; ++n) {
    for (int k = 1; k <= 1000; ++k) {
      bool a = (k % (2 * n)) == n;
      bool b = !a && ((k - n) % 2 == 0);
      bool c = ((k - n) % 2 != 0);
      CHECK((int)a + (int)b + (int)c == 1);
      ClassTag tag = dbcp::class_of(k, n);
      CHECK(((tag == ClassTag::A) == a));
      CHECK(((tag == ClassTag::B) == b));
      CHECK(((tag == ClassTag::C) == c));
      if (a) CHECK(k % n == 0);  // A sits inside the multiples of n
    }
  }
}

TEST_CASE("projections partition the series and are X-orthogonal") {
  CHECK(dbcp::project_class(mono(3, 1.0) + mono(5, 1.0), 5, ClassTag::A) == mono(5, 1.0));

  std::mt19937_64 gen(0x9e3f7ULL);
  for (int n : {3, 4, 6}) {
    CosineSeries u = random_series(gen, 40);
    u.lap = 1;  // the pending symbol must survive projection
    CosineSeries pa = dbcp::project_class(u, n, ClassTag::A);
    CosineSeries pb = dbcp::project_class(u, n, ClassTag::B);
    CosineSeries pc = dbcp::project_class(u, n, ClassTag::C);
    CHECK(pa.lap == 1);
    CosineSeries sum = pa + pb + pc;
    CHECK(sum.lap == 1);
    REQUIRE(sum.a.size() == u.a.size());
    for (std::size_t i = 0; i < u.a.size(); ++i) CHECK(sum.a[i] == u.a[i]);

    // Disjoint supports: inner products vanish exactly, in every norm.
    pa.lap = pb.lap = pc.lap = 0;
    CHECK(xdot(pa, pb) == 0.0);
    CHECK(xdot(pa, pc) == 0.0);
    CHECK(xdot(pb, pc) == 0.0);
  }
}

TEST_CASE("apply_Tn shift semantics, fixed points, order, isometry") {
  // Class-A mode: exact fixed point (quarter-turn table, no rounding).
  dbcp::TrigSeries2 v5 = dbcp::embed_even(mono(5, 1.0));
  dbcp::TrigSeries2 t5 = dbcp::apply_Tn(v5, 5);
  REQUIRE(t5.c.size() == v5.c.size());
  for (std::size_t i = 0; i < v5.c.size(); ++i) {
    CHECK(t5.c[i] == v5.c[i]);
    CHECK(t5.s[i] == v5.s[i]);
  }

  std::mt19937_64 gen(0x7f3a2bULL);
  for (int n : {2, 3, 4, 5, 8}) {
    dbcp::TrigSeries2 v;
    v.c.resize(17);
    v.s.resize(17);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& x : v.c) x = d(gen);
    for (auto& x : v.s) x = d(gen);

    // Shift-and-negate semantics on sample points: (T_n v)(x) = -v(x + 1/n).
    dbcp::TrigSeries2 tv = dbcp::apply_Tn(v, n);
    for (int i = 0; i <= 30; ++i) {
      double x = -1.0 + 2.0 * (double)i / 30.0;
      CHECK(dbcp::eval_trig(tv, x) ==
            doctest::Approx(-dbcp::eval_trig(v, x + 1.0 / (double)n)).epsilon(1e-12));
    }

    // T_n^(2n) = identity; L2(0,2) norm preserved along the way.
    double nrm = dbcp::norm_L2_period2(v);
    dbcp::TrigSeries2 w = v;
    for (int j = 0; j < 2 * n; ++j) {
      w = dbcp::apply_Tn(w, n);
      CHECK(dbcp::norm_L2_period2(w) == doctest::Approx(nrm).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < v.c.size(); ++i) {
      CHECK(w.c[i] == doctest::Approx(v.c[i]).epsilon(1e-12));
      CHECK(w.s[i] == doctest::Approx(v.s[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("annihilator residuals on embedded class projections") {
  std::mt19937_64 gen(0xc0de5ULL);
  for (int n = 2; n <= 8; ++n) {
    CosineSeries u = random_series(gen, 64);
    for (ClassTag t : {ClassTag::A, ClassTag::B, ClassTag::C}) {
      CosineSeries p = dbcp::project_class(u, n, t);
      double r = dbcp::annihilator_residual(dbcp::embed_even(p), n, t);
      CHECK(r <= 1e-10);
    }
  }
  // Spec'd single-mode anchors.
  CHECK(dbcp::annihilator_residual(dbcp::embed_even(mono(5, 1.0)), 5, ClassTag::A) <= 1e-12);
  CHECK(dbcp::annihilator_residual(dbcp::embed_even(mono(3, 1.0)), 5, ClassTag::B) <= 1e-12);
  CHECK(dbcp::annihilator_residual(dbcp::embed_even(mono(4, 1.0)), 5, ClassTag::C) <= 1e-12);
}

TEST_CASE("mirror symmetry about one half by class") {
  std::mt19937_64 gen(0x3c3c3ULL);
  for (int n : {3, 4, 5, 6}) {
    CosineSeries u = random_series(gen, 48);
    CosineSeries ab = dbcp::project_class(u, n, ClassTag::A) +
                      dbcp::project_class(u, n, ClassTag::B);
    CosineSeries c = dbcp::project_class(u, n, ClassTag::C);
    for (int i = 0; i <= 100; ++i) {
      double x = 0.5 * (double)i / 100.0;
      double abp = dbcp::eval_at(ab, 0.5 + x), abm = dbcp::eval_at(ab, 0.5 - x);
      double cp = dbcp::eval_at(c, 0.5 + x), cm = dbcp::eval_at(c, 0.5 - x);
      if (n % 2 == 0) {
        CHECK(std::fabs(abp - abm) <= 1e-10);  // A+B even about 1/2
        CHECK(std::fabs(cp + cm) <= 1e-10);    // C odd
      } else {
        CHECK(std::fabs(abp + abm) <= 1e-10);  // A+B odd about 1/2
        CHECK(std::fabs(cp - cm) <= 1e-10);    // C even
      }
    }
  }
}

TEST_CASE("sup-norm embedding constant") {
  Interval c1 = dbcp::c1bar();
  long double ref = 1.0L / std::sqrt(45.0L);
  CHECK((long double)c1.lo() <= ref);
  CHECK(ref <= (long double)c1.hi());
  CHECK(c1.hi() == doctest::Approx(0.149072).epsilon(1e-5));
  CHECK(c1.width() <= 1e-15);
  // It really dominates sup/X ratios.
  std::mt19937_64 gen(0xf00dULL);
  for (int t = 0; t < 20; ++t) {
    CosineSeries u = random_series(gen, 30);
    auto nm = dbcp::norms(u);
    double grid_max = 0.0;
    for (int i = 0; i <= 2000; ++i)
      grid_max = std::max(grid_max, std::fabs(dbcp::eval_at(u, (double)i / 2000.0)));
    CHECK(grid_max <= c1.hi() * nm.normX);
  }
}

TEST_CASE("kernel classification by rigorous point tests") {
  // n odd, class B: phi(1/2n) != 0 and phi(0) - phi(1) != 0.
  auto r = dbcp::classify_kernel(lift(mono(3, 1.0)), 5);
  REQUIRE(r.has_value());
  CHECK(r->kernel_class == ClassTag::B);
  CHECK(r->case_label == 'd');
  CHECK(!r->n_even);
  CHECK(!r->kernel_even_about_half);

  // n odd, class C: phi(0) + phi(1) != 0.
  auto rc = dbcp::classify_kernel(lift(mono(2, 1.0)), 5);
  REQUIRE(rc.has_value());
  CHECK(rc->kernel_class == ClassTag::C);
  CHECK(rc->case_label == 'c');
  CHECK(rc->kernel_even_about_half);

  // n even, class B: case (a).
  auto ra = dbcp::classify_kernel(lift(mono(2, 1.0)), 4);
  REQUIRE(ra.has_value());
  CHECK(ra->kernel_class == ClassTag::B);
  CHECK(ra->case_label == 'a');
  CHECK(ra->n_even);
  CHECK(ra->kernel_even_about_half);

  // n even, class C: case (b).
  auto rb = dbcp::classify_kernel(lift(mono(1, 1.0)), 4);
  REQUIRE(rb.has_value());
  CHECK(rb->kernel_class == ClassTag::C);
  CHECK(rb->case_label == 'b');
  CHECK(!rb->kernel_even_about_half);

  // Class-A input: every test quantity vanishes, so no conclusion.
  CHECK(!dbcp::classify_kernel(lift(mono(5, 1.0)), 5).has_value());

  // Slack: a modest ball keeps the verdict, a huge one destroys it.
  CHECK(dbcp::classify_kernel(lift(mono(3, 1.0)), 5, 1.0).has_value());
  CHECK(!dbcp::classify_kernel(lift(mono(3, 1.0)), 5, 10.0).has_value());

  CHECK_THROWS_AS(dbcp::classify_kernel(lift(CosineSeries(3)), 5), dbcp::BadInput);
  CHECK_THROWS_AS(dbcp::classify_kernel(lift(mono(3, 1.0)), 1), dbcp::BadInput);
  CHECK_THROWS_AS(dbcp::classify_kernel(lift(mono(3, 1.0)), 5, -0.5), dbcp::BadInput);
}
