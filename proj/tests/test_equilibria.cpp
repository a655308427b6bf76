#include <cmath>
#include <vector>

#include "dbcp/equilibria.hpp"
#include "dbcp/errors.hpp"
#include "doctest.h"

using namespace dbcp;

namespace {

CosineSeries mode(int k, double amp) {
  CosineSeries u((std::size_t)k);
  u.a[(std::size_t)k - 1] = amp;
  return u;
}

double kp2(int k) {
  double t = (double)k * M_PI;
  return t * t;
}

// Linearization eigenvalue of the weighted realization at u = 0.
double trivial_nu(double sigma, double lambda, int k) {
  return (lambda * (kp2(k) - sigma) - kp2(k) * kp2(k)) / (kp2(k) * kp2(k));
}

double residual_normY(double sigma, double lambda, const CosineSeries& u, int N) {
  return norms(project_PN(F_apply(ModelParams(sigma, lambda), u), N)).normY;
}

int argmax_coeff(const CosineSeries& u) {
  int best = 0;
  for (std::size_t i = 1; i < u.a.size(); ++i)
    if (std::fabs(u.a[i]) > std::fabs(u.a[(std::size_t)best])) best = (int)i;
  return best + 1;
}

}  // namespace

TEST_CASE("primary crossing points match the closed form") {
  // lambda_k = (k pi)^4 / ((k pi)^2 - sigma) at sigma = 6, evaluated at high
  // precision out of band and frozen here.
  const double want[8] = {25.172880981471941, 46.553737245370407, 95.261083428488167,
                          164.15064711545223, 252.88964888054731, 361.40882000957537,
                          489.68599086242989, 637.71222139739097};
  for (int k = 1; k <= 8; ++k)
    CHECK(primary_lambda(6.0, k) == doctest::Approx(want[k - 1]).epsilon(1e-14));

  CHECK_THROWS_AS((void)primary_lambda(6.0, 0), BadInput);
  CHECK_THROWS_AS((void)primary_lambda(-1.0, 1), BadInput);
  // (pi)^2 < 12: the 1-layer branch never detaches.
  CHECK_THROWS_AS((void)primary_lambda(12.0, 1), BadInput);
  CHECK(primary_lambda(12.0, 2) > 0.0);
}

TEST_CASE("Galerkin matrix columns are the derivative applied to basis vectors") {
  CosineSeries u(8);
  u.a = {0.31, -0.12, 0.054, 0.21, -0.08, 0.013, -0.044, 0.019};
  ModelParams p(6.0, 29.5);
  const int N = 14;
  Eigen::MatrixXd J = galerkin_jacobian(p, u, N);
  for (int j = 1; j <= N; ++j) {
    CosineSeries col = project_PN(materialized(DuF_apply(p, u, mode(j, 1.0))), N);
    for (int k = 1; k <= N; ++k) {
      double want = (std::size_t)k <= col.a.size() ? col.a[(std::size_t)k - 1] : 0.0;
      CHECK(J(k - 1, j - 1) == doctest::Approx(want).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS((void)galerkin_jacobian(p, u, 0), BadInput);
}

TEST_CASE("weighted realization is symmetric and matches the raw spectrum signs") {
  CosineSeries u(6);
  u.a = {0.4, 0.0, -0.2, 0.05, 0.0, 0.03};
  ModelParams p(6.0, 80.0);
  const int N = 20;
  Eigen::MatrixXd Bh = weighted_jacobian(p, u, N);
  CHECK((Bh - Bh.transpose()).cwiseAbs().maxCoeff() == 0.0);  // symmetrized exactly
  // Congruence keeps the inertia: compare sign counts against the raw
  // (nonsymmetric) Galerkin spectrum.
  Eigen::EigenSolver<Eigen::MatrixXd> raw(galerkin_jacobian(p, u, N));
  int raw_pos = 0;
  for (int i = 0; i < N; ++i)
    if (raw.eigenvalues()[i].real() > 0.0) ++raw_pos;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(Bh);
  int sym_pos = 0;
  for (int i = 0; i < N; ++i)
    if (sym.eigenvalues()[i] > 0.0) ++sym_pos;
  CHECK(raw_pos == sym_pos);
}

TEST_CASE("weighted spectrum at the trivial state is the closed form") {
  const double sigma = 6.0, lambda = 40.0;
  const int N = 12, n = 3;
  CosineSeries zero((std::size_t)N);
  std::vector<WeightedEig> sp = weighted_spectrum(ModelParams(sigma, lambda), zero, N, n);
  REQUIRE((int)sp.size() == N);

  std::vector<double> want;
  for (int k = 1; k <= N; ++k) want.push_back(trivial_nu(sigma, lambda, k));
  std::sort(want.begin(), want.end());
  for (int i = 0; i < N; ++i) {
    CHECK(sp[(std::size_t)i].nu ==
          doctest::Approx(want[(std::size_t)i]).epsilon(1e-12));
    if (i > 0) CHECK(sp[(std::size_t)i].nu >= sp[(std::size_t)i - 1].nu);
  }

  for (const WeightedEig& e : sp) {
    int k = argmax_coeff(e.vec);
    CHECK(e.nu == doctest::Approx(trivial_nu(sigma, lambda, k)).epsilon(1e-12));
    CHECK(e.cls == class_of(k, n));
    CHECK(e.mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norms(e.vec).normX == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.vec.a[(std::size_t)k - 1] > 0.0);  // canonical sign
    // Unit X-norm pure mode has coefficient sqrt(2)/(k pi)^2.
    CHECK(e.vec.a[(std::size_t)k - 1] ==
          doctest::Approx(std::sqrt(2.0) / kp2(k)).epsilon(1e-10));
  }

  // lambda = 40 sits between lambda_1 and lambda_2: exactly one unstable mode.
  int pos = 0;
  for (const WeightedEig& e : sp)
    if (e.nu > 0.0) ++pos;
  CHECK(pos == 1);
}

TEST_CASE("newton converges on the one-layer branch and keeps classes exactly") {
  const double sigma = 6.0;
  const int N = 40;

  // The trivial guess is already a solution.
  CosineSeries u0 = newton_equilibrium(ModelParams(sigma, 30.0), CosineSeries(4), N);
  CHECK(norms(u0).normX == 0.0);

  // One-layer state at lambda = 30: local pitchfork amplitude ~ 0.29.
  CosineSeries u1 = newton_equilibrium(ModelParams(sigma, 30.0), mode(1, 0.29), N);
  CHECK(residual_normY(sigma, 30.0, u1, N) <= 1e-13);
  // Residual of the same coefficients against a much larger Galerkin block:
  // the exact cubic closure leaves only the truncation tail.
  CHECK(residual_normY(sigma, 30.0, u1, 3 * N) <= 1e-10);
  CHECK(std::fabs(u1.a[0]) > 0.2);
  CHECK(std::fabs(u1.a[0]) < 0.4);
  // Odd modes only: the 1-layer branch lives in the odd-wave-number class.
  for (std::size_t i = 1; i < u1.a.size(); i += 2) CHECK(u1.a[i] == 0.0);

  // Three-layer state at lambda = 100 > lambda_3, seeded inside class A(3):
  // the Jacobian is exactly block diagonal over the classes, so Newton never
  // leaves the seed class; off-class coefficients stay bitwise zero.
  CosineSeries u3 = newton_equilibrium(ModelParams(sigma, 100.0, 3), mode(3, 0.3), N + 2);
  CHECK(norms(u3).normX > 0.1);
  CHECK(residual_normY(sigma, 100.0, u3, N + 2) <= 1e-13);
  bool nontrivial = false;
  for (std::size_t i = 0; i < u3.a.size(); ++i) {
    int k = (int)i + 1;
    if (class_of(k, 3) != ClassTag::A)
      CHECK(u3.a[i] == 0.0);
    else if (u3.a[i] != 0.0)
      nontrivial = true;
  }
  CHECK(nontrivial);

  CHECK_THROWS_AS((void)newton_equilibrium(ModelParams(sigma, 30.0), mode(9, 0.1), 4), BadInput);
  CHECK_THROWS_AS((void)newton_equilibrium(ModelParams(sigma, 30.0), CosineSeries(2), 0),
                  BadInput);
}

TEST_CASE("branch continuation walks the one-layer branch") {
  const double sigma = 6.0;
  StepPolicy pol;
  pol.N = 32;
  std::vector<BranchSample> br = continue_branch(sigma, 1, 25.5, 40.0, pol);
  REQUIRE(br.size() >= 4);

  double lam1 = primary_lambda(sigma, 1);
  CHECK(br.front().lambda == doctest::Approx(lam1 + 0.5).epsilon(1e-12));
  CHECK(br.back().lambda == doctest::Approx(40.0).epsilon(1e-12));

  double prev_lam = 0.0, prev_norm = 0.0;
  for (const BranchSample& s : br) {
    CHECK(s.lambda > prev_lam);
    CHECK(residual_normY(sigma, s.lambda, s.u, pol.N) <= 2e-13);
    CHECK((int)s.u.a.size() == pol.N);
    for (std::size_t i = 1; i < s.u.a.size(); i += 2) CHECK(s.u.a[i] == 0.0);
    CHECK(s.normX == doctest::Approx(norms(s.u).normX));
    // Amplitude grows with lambda on the primary branch.
    CHECK(s.normX > prev_norm - 1e-10);
    CHECK((int)s.smallest_eigs.size() <= pol.eig_store);
    prev_lam = s.lambda;
    prev_norm = s.normX;
  }
  CHECK(br.back().normX > br.front().normX);

  CHECK_THROWS_AS((void)continue_branch(sigma, 1, 10.0, 20.0, pol), BadInput);
}

TEST_CASE("crossings on the trivial branch are located to closed-form accuracy") {
  const double sigma = 6.0;
  const int N = 40;
  std::vector<BranchSample> br = trivial_branch(sigma, 20.0, 120.0, 51, N);
  REQUIRE(br.size() == 51);
  for (const BranchSample& s : br) {
    CHECK(norms(s.u).normX == 0.0);
    int want_pos = 0;
    for (int k = 1; k <= N; ++k)
      if (trivial_nu(sigma, s.lambda, k) > 0.0) ++want_pos;
    CHECK(s.stability_index == want_pos);
  }
  CHECK_THROWS_AS((void)trivial_branch(sigma, 20.0, 120.0, 1, N), BadInput);
  CHECK_THROWS_AS((void)trivial_branch(sigma, 20.0, 10.0, 5, N), BadInput);

  // n = 11 keeps every crossing mode k <= 3 outside the fixed-point class:
  // odd k land in B, even k in C.
  std::vector<BifurcationRecord> recs = detect_bifurcations(sigma, br, 11);
  REQUIRE(recs.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    const BifurcationRecord& r = recs[(std::size_t)k - 1];
    double want = primary_lambda(sigma, k);
    CHECK(r.lambda0 == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.resolved);
    CHECK(std::fabs(r.kernel_eig) <= 1e-10);
    CHECK(norms(r.u0).normX == 0.0);
    CHECK(r.n_sym == 11);
    CHECK(r.bracket_lo < r.lambda0);
    CHECK(r.bracket_hi > r.lambda0);

    CHECK(argmax_coeff(r.phi0) == k);
    // Records store the kernel at unit L2 scale: a pure mode has coefficient
    // sqrt(2).
    CHECK(norms(r.phi0).normL2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.phi0.a[(std::size_t)k - 1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    for (std::size_t i = 0; i < r.phi0.a.size(); ++i)
      if ((int)i + 1 != k) CHECK(std::fabs(r.phi0.a[i]) <= 1e-8);

    REQUIRE(r.scenario.has_value());
    CHECK(r.scenario->kernel_class == class_of(k, 11));
    CHECK(r.scenario->kernel_class == (k % 2 == 1 ? ClassTag::B : ClassTag::C));
    CHECK_FALSE(r.scenario->n_even);
  }

  // Determinism: the same input bisects to bitwise identical locations.
  std::vector<BifurcationRecord> again = detect_bifurcations(sigma, br, 11);
  REQUIRE(again.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(again[i].lambda0 == recs[i].lambda0);
    CHECK(again[i].kernel_eig == recs[i].kernel_eig);
  }

  CHECK_THROWS_AS((void)detect_bifurcations(sigma, {}, 11), BadInput);
}

TEST_CASE("fixed-point-class crossings are not reported") {
  const double sigma = 6.0;
  std::vector<BranchSample> br = trivial_branch(sigma, 20.0, 120.0, 51, 40);
  // Under n = 3 the mode-3 crossing at lambda_3 is a class-A event (it stays
  // inside the symmetric subspace) and must be dropped; modes 1 and 2 remain.
  std::vector<BifurcationRecord> recs = detect_bifurcations(sigma, br, 3);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].lambda0 == doctest::Approx(primary_lambda(sigma, 1)).epsilon(1e-9));
  CHECK(recs[1].lambda0 == doctest::Approx(primary_lambda(sigma, 2)).epsilon(1e-9));
  REQUIRE(recs[0].scenario.has_value());
  REQUIRE(recs[1].scenario.has_value());
  CHECK(recs[0].scenario->kernel_class == ClassTag::B);
  CHECK(recs[1].scenario->kernel_class == ClassTag::C);
  for (const BifurcationRecord& r : recs)
    CHECK(std::fabs(r.lambda0 - primary_lambda(sigma, 3)) > 5.0);
}

TEST_CASE("shape constants at a trivial crossing match the pitchfork closed form") {
  const double sigma = 6.0;
  std::vector<BranchSample> br = trivial_branch(sigma, 20.0, 30.0, 11, 24);
  std::vector<BifurcationRecord> recs = detect_bifurcations(sigma, br, 11);
  REQUIRE(recs.size() == 1);
  const BifurcationRecord& r = recs[0];

  ShapeDiagnostics d = shape_diagnostics(r, sigma);

  // At a trivial-branch crossing DlamF and DuuF[phi,phi] vanish identically,
  // so both auxiliary solves return exact zeros.
  CHECK(norms(d.xi0).normX == 0.0);
  CHECK(norms(d.zeta0).normX == 0.0);

  CHECK(norms(d.psi0).normY == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(argmax_coeff(d.psi0) == 1);

  // Frozen closed forms at m = 1, sigma = 6, for the unit-L2 kernel
  // phi = sqrt(2) cos(pi x):
  //   nondegeneracy = (pi^2 - sigma)/pi^2, rho = -9 pi^6/(pi^2 - sigma)^2.
  CHECK(d.nondegeneracy_value == doctest::Approx(0.39207289814597335).epsilon(1e-9));
  CHECK(d.shape_rho == doctest::Approx(-577.8413399767766).epsilon(1e-8));

  // rho < 0: the symmetry-broken branch opens toward lambda > lambda_0.
  CHECK(d.shape_rho < 0.0);

  BifurcationRecord bad = r;
  bad.scenario.reset();
  CHECK_THROWS_AS((void)shape_diagnostics(bad, sigma), BadInput);
  bad = r;
  bad.scenario->kernel_class = ClassTag::A;
  CHECK_THROWS_AS((void)shape_diagnostics(bad, sigma), BadInput);
}
