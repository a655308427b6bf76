#include "dbcp/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "dbcp/errors.hpp"

namespace dbcp {

namespace {

double kpi(int k) { return (double)k * M_PI; }

CosineSeries fit_modes(const CosineSeries& u, int N) {
  CosineSeries out = materialized(u);
  out.a.resize((std::size_t)N, 0.0);
  return out;
}

Eigen::VectorXd series_to_vec(const CosineSeries& u, int N) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
  for (int k = 0; k < N && k < (int)u.a.size(); ++k) v[k] = u.a[(std::size_t)k];
  return v;
}

// Divides by the X-norm and flips the sign so the first significant
// coefficient is positive; no-op on the zero vector.
void canonicalize_x(CosineSeries& v) {
  double nx = norms(v).normX;
  if (nx > 0.0)
    for (double& c : v.a) c /= nx;
  double mx = 0.0;
  for (double c : v.a) mx = std::max(mx, std::fabs(c));
  for (double c : v.a) {
    if (std::fabs(c) > 1e-8 * mx) {
      if (c < 0.0)
        for (double& x : v.a) x = -x;
      break;
    }
  }
}

int class_index(ClassTag t) { return t == ClassTag::A ? 0 : (t == ClassTag::B ? 1 : 2); }

ICosineSeries lift_series(const CosineSeries& u) {
  ICosineSeries out(u.a.size());
  out.lap = u.lap;
  for (std::size_t i = 0; i < u.a.size(); ++i) out.a[i] = Interval(u.a[i]);
  return out;
}

// Newton iteration; reports the number of iterations actually used.
CosineSeries newton_impl(const ModelParams& p, const CosineSeries& u_start, int N, double tol,
                         int maxit, int& iters) {
  CosineSeries u = fit_modes(u_start, N);
  for (int it = 0;; ++it) {
    CosineSeries r = project_PN(F_apply(p, u), N);
    if (norms(r).normY <= tol) {
      iters = it;
      return u;
    }
    if (it >= maxit) break;
    Eigen::MatrixXd J = galerkin_jacobian(p, u, N);
    Eigen::VectorXd rhs = -series_to_vec(r, N);
    Eigen::VectorXd dx = Eigen::PartialPivLU<Eigen::MatrixXd>(J).solve(rhs);
    if (!dx.allFinite() || dx.cwiseAbs().maxCoeff() > 1e10 * (1.0 + norms(u).supBound))
      throw SingularJacobian("equilibria",
                             "Galerkin linearization is numerically singular; perturb the guess");
    for (int k = 0; k < N; ++k) u.a[(std::size_t)k] += dx[k];
  }
  throw NoConvergence("equilibria", "Newton did not reach the residual tolerance");
}

BranchSample make_sample(const ModelParams& p, const CosineSeries& u, int N, int eig_store) {
  BranchSample s;
  s.lambda = p.lambda;
  s.u = u;
  s.normX = norms(u).normX;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(weighted_jacobian(p, u, N),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("equilibria", "eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  s.stability_index = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > 0.0) ++s.stability_index;
  std::vector<int> idx(ev.size());
  for (int i = 0; i < ev.size(); ++i) idx[(std::size_t)i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return std::fabs(ev[a]) < std::fabs(ev[b]); });
  int keep = std::min<int>(eig_store, (int)idx.size());
  for (int i = 0; i < keep; ++i) s.smallest_eigs.push_back(ev[idx[(std::size_t)i]]);
  std::sort(s.smallest_eigs.begin(), s.smallest_eigs.end());
  return s;
}

}  // namespace

double primary_lambda(double sigma, int k) {
  if (k < 1) throw BadInput("equilibria", "mode index must be >= 1");
  if (!(sigma > 0.0)) throw BadInput("equilibria", "sigma must be positive");
  double kp2 = kpi(k) * kpi(k);
  if (!(kp2 > sigma))
    throw BadInput("equilibria", "(k pi)^2 must exceed sigma for a primary branch");
  return kp2 * kp2 / (kp2 - sigma);
}

Eigen::MatrixXd galerkin_jacobian(const ModelParams& p, const CosineSeries& u, int N) {
  if (N < 1) throw BadInput("equilibria", "Galerkin dimension must be >= 1");
  CosineSeries um = trimmed(materialized(u));
  ProductResult<double> u2 = product(um, um);
  const std::vector<double>& c = u2.series.a;
  Eigen::MatrixXd J(N, N);
  std::vector<double> g((std::size_t)N);
  for (int j = 1; j <= N; ++j) {
    std::fill(g.begin(), g.end(), 0.0);
    if ((std::size_t)j <= g.size()) g[(std::size_t)j - 1] += u2.mean;
    for (std::size_t mi = 0; mi < c.size(); ++mi) {
      if (c[mi] == 0.0) continue;
      int m = (int)mi + 1;
      int ks = m + j;
      if (ks <= N) g[(std::size_t)ks - 1] += 0.5 * c[mi];
      int kd = std::abs(m - j);
      if (kd >= 1 && kd <= N) g[(std::size_t)kd - 1] += 0.5 * c[mi];
    }
    for (int k = 1; k <= N; ++k) {
      double kp2 = kpi(k) * kpi(k);
      double fp = (k == j ? 1.0 : 0.0) - 3.0 * g[(std::size_t)k - 1];
      double val = p.lambda * kp2 * fp;
      if (k == j) val -= kp2 * kp2 + p.lambda * p.sigma;
      J(k - 1, j - 1) = val;
    }
  }
  return J;
}

Eigen::MatrixXd weighted_jacobian(const ModelParams& p, const CosineSeries& u, int N) {
  Eigen::MatrixXd J = galerkin_jacobian(p, u, N);
  Eigen::MatrixXd Bh(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double wi = kpi(i + 1);
      double wj = kpi(j + 1);
      Bh(i, j) = J(i, j) / (wi * wi * wi * wj);
    }
  // B is symmetric in exact arithmetic; fold the assembly roundoff away.
  return 0.5 * (Bh + Bh.transpose());
}

std::vector<WeightedEig> weighted_spectrum(const ModelParams& p, const CosineSeries& u, int N,
                                           int n_sym) {
  if (n_sym < 1) throw BadInput("equilibria", "n_sym must be >= 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(weighted_jacobian(p, u, N));
  if (es.info() != Eigen::Success) throw NumericalError("equilibria", "eigensolver failed");
  std::vector<WeightedEig> out;
  out.reserve((std::size_t)N);
  for (int i = 0; i < N; ++i) {
    WeightedEig e;
    e.nu = es.eigenvalues()[i];
    CosineSeries v((std::size_t)N);
    for (int k = 1; k <= N; ++k) v.a[(std::size_t)k - 1] = es.eigenvectors()(k - 1, i) / kpi(k);
    canonicalize_x(v);
    double mass[3] = {0.0, 0.0, 0.0};
    for (int k = 1; k <= N; ++k) {
      double kp = kpi(k);
      double t = v.a[(std::size_t)k - 1];
      mass[class_index(class_of(k, n_sym))] += t * t * kp * kp * kp * kp / 2.0;
    }
    double total = mass[0] + mass[1] + mass[2];
    int best = 0;
    for (int t = 1; t < 3; ++t)
      if (mass[t] > mass[best]) best = t;
    e.cls = best == 0 ? ClassTag::A : (best == 1 ? ClassTag::B : ClassTag::C);
    e.mass = total > 0.0 ? mass[best] / total : 0.0;
    e.vec = std::move(v);
    out.push_back(std::move(e));
  }
  return out;
}

CosineSeries newton_equilibrium(const ModelParams& p, const CosineSeries& u_init, int N,
                                double tol, int maxit) {
  if (N < 1) throw BadInput("equilibria", "Galerkin dimension must be >= 1");
  if ((int)trimmed(materialized(u_init)).a.size() > N)
    throw BadInput("equilibria", "initial guess has more modes than the Galerkin dimension");
  int iters = 0;
  return newton_impl(p, u_init, N, tol, maxit, iters);
}

std::vector<BranchSample> continue_branch(double sigma, int k, double lambda_lo,
                                          double lambda_hi, const StepPolicy& pol) {
  double lamk = primary_lambda(sigma, k);
  if (!(lambda_hi > lamk))
    throw BadInput("equilibria", "lambda range ends before the branch detaches");
  double lam = std::max(lambda_lo, lamk + pol.seed_offset);
  if (lam > lambda_hi) lam = lambda_hi;

  double kp2 = kpi(k) * kpi(k);
  auto params = [&](double l) {
    return ModelParams(sigma, l, k >= 2 ? std::optional<int>(k) : std::nullopt);
  };
  auto seed_amp = [&](double l) {
    double mu = l * (kp2 - sigma) - kp2 * kp2;  // linearization eigenvalue at mode k
    double a2 = 4.0 * mu / (3.0 * l * kp2);     // local pitchfork amplitude
    return std::max(a2 > 0.0 ? std::sqrt(a2) : 0.0, 1e-2);
  };

  std::vector<BranchSample> out;
  CosineSeries u;
  {
    double amp = seed_amp(lam);
    int iters = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt, amp *= 4.0) {
      CosineSeries seed((std::size_t)k);
      seed.a[(std::size_t)k - 1] = amp;
      u = newton_impl(params(lam), seed, pol.N, pol.newton_tol,
                      pol.newton_maxit, iters);
      ok = norms(u).normX > 1e-8;
    }
    if (!ok) throw NoConvergence("equilibria", "seed kept collapsing onto the trivial branch");
    out.push_back(make_sample(params(lam), u, pol.N, pol.eig_store));
  }

  double h = pol.initial_step;
  double lam_prev = lam;
  CosineSeries u_prev = u;
  while (lam < lambda_hi - 1e-12 && out.size() < pol.max_samples) {
    double lam_next = std::min(lam + h, lambda_hi);
    CosineSeries guess = u;
    if (out.size() >= 2 && lam > lam_prev) {
      double t = (lam_next - lam) / (lam - lam_prev);
      guess = u + scaled(u - u_prev, t);
    }
    int iters = 0;
    CosineSeries un;
    bool accepted = true;
    try {
      un = newton_impl(params(lam_next), guess, pol.N, pol.newton_tol,
                       pol.newton_maxit, iters);
      if (norms(un).normX < 1e-8) accepted = false;  // fell onto the trivial branch
    } catch (const Error&) {
      accepted = false;
    }
    if (!accepted) {
      h *= 0.5;
      if (h < pol.min_step) break;
      continue;
    }
    u_prev = u;
    lam_prev = lam;
    u = un;
    lam = lam_next;
    out.push_back(make_sample(params(lam), u, pol.N, pol.eig_store));
    if (iters <= 4)
      h = std::min(h * 1.6, pol.max_step);
    else if (iters > 8)
      h = std::max(h * 0.5, pol.min_step);
  }
  return out;
}

std::vector<BranchSample> trivial_branch(double sigma, double lambda_lo, double lambda_hi,
                                         int samples, int N) {
  if (samples < 2) throw BadInput("equilibria", "need at least two samples");
  if (!(lambda_hi > lambda_lo)) throw BadInput("equilibria", "empty lambda range");
  std::vector<BranchSample> out;
  CosineSeries zero((std::size_t)N);
  for (int i = 0; i < samples; ++i) {
    double lam = lambda_lo + (lambda_hi - lambda_lo) * (double)i / (double)(samples - 1);
    out.push_back(make_sample(ModelParams(sigma, lam), zero, N, 6));
  }
  return out;
}

namespace {

struct Probe {
  double lam = 0.0;
  CosineSeries u;
  std::vector<WeightedEig> eigs;
  int neg[3] = {0, 0, 0};
};

Probe make_probe(double sigma, int n_sym, double lam, const CosineSeries& seed, int N,
                 const DetectPolicy& pol, bool solve) {
  Probe pr;
  pr.lam = lam;
  ModelParams p(sigma, lam, n_sym >= 2 ? std::optional<int>(n_sym) : std::nullopt);
  int iters = 0;
  pr.u = solve ? newton_impl(p, seed, N, pol.newton_tol, pol.newton_maxit, iters)
               : fit_modes(seed, N);
  pr.eigs = weighted_spectrum(p, pr.u, N, n_sym);
  for (const WeightedEig& e : pr.eigs)
    if (e.nu < 0.0) ++pr.neg[class_index(e.cls)];
  return pr;
}

// Index of the class-tau eigenvalue closest to zero; -1 if the class is
// absent from the spectrum.
int smallest_in_class(const Probe& pr, int tau) {
  int best = -1;
  for (std::size_t i = 0; i < pr.eigs.size(); ++i) {
    if (class_index(pr.eigs[i].cls) != tau) continue;
    if (best < 0 || std::fabs(pr.eigs[i].nu) < std::fabs(pr.eigs[(std::size_t)best].nu))
      best = (int)i;
  }
  return best;
}

}  // namespace

std::vector<BifurcationRecord> detect_bifurcations(double sigma,
                                                   const std::vector<BranchSample>& branch,
                                                   int n_sym, const DetectPolicy& pol) {
  if (branch.size() < 2) throw BadInput("equilibria", "need at least two branch samples");
  if (n_sym < 1) throw BadInput("equilibria", "n_sym must be >= 1");
  std::size_t maxmodes = 0;
  for (const BranchSample& s : branch) maxmodes = std::max(maxmodes, s.u.a.size());
  int N = pol.N > 0 ? pol.N : (int)maxmodes;
  if (N < 1) throw BadInput("equilibria", "branch carries no modes");

  std::vector<BifurcationRecord> out;

  auto interp_seed = [&](const Probe& A, const Probe& B, double lam) {
    double t = (lam - A.lam) / (B.lam - A.lam);
    return A.u + scaled(B.u - A.u, t);
  };

  auto emit = [&](const Probe& P, int tau, bool resolved, double blo, double bhi) {
    int ei = smallest_in_class(P, tau);
    if (ei < 0) return;
    const WeightedEig& e = P.eigs[(std::size_t)ei];
    // Crossings inside the fixed-point class are folds or branch-internal
    // events, not symmetry breaking; they are not recorded.
    if (e.cls == ClassTag::A && e.mass >= pol.class_mass_min) return;
    BifurcationRecord rec;
    rec.lambda0 = P.lam;
    rec.u0 = P.u;
    // Records carry the kernel function at unit L2 scale. Eigenvector scale
    // is arbitrary, and the canonical X scale makes high-mode kernels tiny in
    // sup norm; a unit-L2 representer keeps the refined kernel vector, and
    // with it the sup-norm-driven Lipschitz constants, O(1).
    rec.phi0 = e.vec;
    {
      double nl2 = norms(rec.phi0).normL2;
      if (nl2 > 0.0) rec.phi0 = scaled(rec.phi0, 1.0 / nl2);
    }
    rec.n_sym = n_sym;
    rec.kernel_eig = e.nu;
    rec.resolved = resolved;
    rec.bracket_lo = blo;
    rec.bracket_hi = bhi;
    if (n_sym >= 2) rec.scenario = classify_kernel(lift_series(rec.phi0), n_sym, 0.0);
    out.push_back(std::move(rec));
  };

  // Bisects an isolated single-crossing bracket of class tau.
  std::function<void(Probe, Probe, int)> isolate;
  auto bisect_single = [&](Probe A, Probe B, int tau, int depth) {
    Probe best;
    bool have_best = false;
    for (int it = 0; it < pol.max_bisect; ++it) {
      double mid = 0.5 * (A.lam + B.lam);
      Probe P = make_probe(sigma, n_sym, mid, interp_seed(A, B, mid), N, pol, true);
      int ei = smallest_in_class(P, tau);
      if (ei >= 0 && std::fabs(P.eigs[(std::size_t)ei].nu) <= pol.detect_tol) {
        emit(P, tau, true, A.lam, B.lam);
        return;
      }
      if (ei >= 0 &&
          (!have_best || std::fabs(P.eigs[(std::size_t)ei].nu) <
                             std::fabs(best.eigs[(std::size_t)smallest_in_class(best, tau)].nu))) {
        best = P;
        have_best = true;
      }
      bool difA = P.neg[tau] != A.neg[tau];
      bool difB = P.neg[tau] != B.neg[tau];
      if (difA && difB) {
        // The midpoint revealed an interior crossing pair; re-isolate.
        isolate(std::move(A), P, depth + 1);
        isolate(std::move(P), std::move(B), depth + 1);
        return;
      }
      if (difA)
        B = std::move(P);
      else
        A = std::move(P);
    }
    emit(have_best ? best : A, tau, false, A.lam, B.lam);
  };

  isolate = [&](Probe A, Probe B, int depth) {
    int moved[3];
    int classes_changed = 0;
    int total_moves = 0;
    for (int t = 0; t < 3; ++t) {
      moved[t] = std::abs(A.neg[t] - B.neg[t]);
      if (moved[t] > 0) ++classes_changed;
      total_moves += moved[t];
    }
    if (total_moves == 0) return;
    if (total_moves == 1) {
      int tau = 0;
      for (int t = 0; t < 3; ++t)
        if (moved[t] > 0) tau = t;
      bisect_single(std::move(A), std::move(B), tau, depth);
      return;
    }
    if (depth > 40) {
      // Cannot separate the crossings; report each changed class unresolved.
      for (int t = 0; t < 3; ++t)
        if (moved[t] > 0) emit(B, t, false, A.lam, B.lam);
      return;
    }
    double mid = 0.5 * (A.lam + B.lam);
    Probe P = make_probe(sigma, n_sym, mid, interp_seed(A, B, mid), N, pol, true);
    isolate(std::move(A), P, depth + 1);
    isolate(std::move(P), std::move(B), depth + 1);
  };

  Probe prev = make_probe(sigma, n_sym, branch[0].lambda, branch[0].u, N, pol, false);
  for (std::size_t i = 1; i < branch.size(); ++i) {
    Probe cur = make_probe(sigma, n_sym, branch[i].lambda, branch[i].u, N, pol, false);
    isolate(prev, cur, 0);
    prev = std::move(cur);
  }

  std::sort(out.begin(), out.end(),
            [](const BifurcationRecord& a, const BifurcationRecord& b) {
              return a.lambda0 < b.lambda0;
            });
  return out;
}

ShapeDiagnostics shape_diagnostics(const BifurcationRecord& rec, double sigma, int N) {
  if (!rec.scenario) throw BadInput("shape", "kernel class unresolved");
  ClassTag tau = rec.scenario->kernel_class;
  if (tau == ClassTag::A) throw BadInput("shape", "kernel lies in the fixed-point class");
  int n = rec.n_sym;
  int Nd = N > 0 ? N : (int)std::max(rec.u0.a.size(), rec.phi0.a.size());
  Nd = std::max(Nd, 8);
  ModelParams p(sigma, rec.lambda0, n >= 2 ? std::optional<int>(n) : std::nullopt);
  CosineSeries u0 = fit_modes(rec.u0, Nd);
  CosineSeries phi = fit_modes(rec.phi0, Nd);

  Eigen::MatrixXd Bh = weighted_jacobian(p, u0, Nd);

  // Annihilator representer of R(L): with B = D2^{-1} L symmetric and
  // L phi = 0, the kernel of L^T is diag(1/(k pi)^2) phi, whose Y-representer
  // is psi_k = (k pi)^2 phi_k. Normalized to unit Y-norm.
  CosineSeries psi((std::size_t)Nd);
  for (int k = 1; k <= Nd; ++k)
    psi.a[(std::size_t)k - 1] = kpi(k) * kpi(k) * phi.a[(std::size_t)k - 1];
  {
    double ny = norms(psi).normY;
    if (!(ny > 0.0)) throw NumericalError("shape", "kernel vector vanished");
    for (double& c : psi.a) c /= ny;
  }

  auto ypair = [&](const CosineSeries& g) {
    CosineSeries gm = materialized(g);
    double s = 0.0;
    std::size_t m = std::min(gm.a.size(), psi.a.size());
    for (std::size_t i = 0; i < m; ++i) {
      double kp = kpi((int)i + 1);
      s += psi.a[i] * gm.a[i] / (kp * kp * kp * kp);
    }
    return 0.5 * s;
  };

  // xi0 from the class-A block: L xi0 = -(I-P) DlamF = -DlamF (DlamF is in
  // Y_a, orthogonal to psi). Solved in weighted coordinates y = D2^{1/2} xi.
  std::vector<int> ia;
  for (int k = 1; k <= Nd; ++k)
    if (class_of(k, std::max(n, 1)) == ClassTag::A) ia.push_back(k);
  CosineSeries xi((std::size_t)Nd);
  if (!ia.empty()) {
    int na = (int)ia.size();
    Eigen::MatrixXd Baa(na, na);
    for (int r = 0; r < na; ++r)
      for (int cidx = 0; cidx < na; ++cidx) Baa(r, cidx) = Bh(ia[(std::size_t)r] - 1, ia[(std::size_t)cidx] - 1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Baa, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(na - 1);
    if (!(smin > 0.0) || smax / smin > 1e12)
      throw NearSingularBlock("fixed-point-class block is numerically singular");
    CosineSeries dl = fit_modes(materialized(DlamF(p, u0)), Nd);
    Eigen::VectorXd rhs(na);
    for (int r = 0; r < na; ++r) {
      int k = ia[(std::size_t)r];
      rhs[r] = -dl.a[(std::size_t)k - 1] / (kpi(k) * kpi(k) * kpi(k));
    }
    Eigen::VectorXd y = svd.solve(rhs);
    for (int r = 0; r < na; ++r) {
      int k = ia[(std::size_t)r];
      xi.a[(std::size_t)k - 1] = y[r] / kpi(k);
    }
  }

  // zeta0: bordered solve of L zeta = -(I-P) DuuF[phi, phi] with zeta
  // X-orthogonal to the kernel, in the same weighted coordinates.
  CosineSeries zeta((std::size_t)Nd);
  {
    CosineSeries g2 = fit_modes(materialized(DuuF_apply(p, u0, phi, phi)), Nd);
    double proj = ypair(g2);  // psi has unit Y-norm
    for (std::size_t i = 0; i < g2.a.size(); ++i) g2.a[i] -= proj * psi.a[i];
    Eigen::MatrixXd M(Nd + 1, Nd + 1);
    M.setZero();
    M.topLeftCorner(Nd, Nd) = Bh;
    Eigen::VectorXd bcol(Nd), crow(Nd);
    for (int k = 1; k <= Nd; ++k) {
      bcol[k - 1] = psi.a[(std::size_t)k - 1] / (kpi(k) * kpi(k) * kpi(k));
      crow[k - 1] = phi.a[(std::size_t)k - 1] * kpi(k) * kpi(k) * kpi(k);
    }
    if (bcol.norm() > 0.0) bcol.normalize();
    if (crow.norm() > 0.0) crow.normalize();
    M.topRightCorner(Nd, 1) = bcol;
    M.bottomLeftCorner(1, Nd) = crow.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(Nd + 1);
    for (int k = 1; k <= Nd; ++k)
      rhs[k - 1] = -g2.a[(std::size_t)k - 1] / (kpi(k) * kpi(k) * kpi(k));
    Eigen::VectorXd y = Eigen::PartialPivLU<Eigen::MatrixXd>(M).solve(rhs);
    if (!y.allFinite()) throw NumericalError("shape", "bordered solve failed");
    for (int k = 1; k <= Nd; ++k) zeta.a[(std::size_t)k - 1] = y[k - 1] / kpi(k);
  }

  double num = ypair(DuuuF_apply(p, u0, phi, phi, phi)) + 3.0 * ypair(DuuF_apply(p, u0, phi, zeta));
  double den = ypair(DlamuF_apply(p, u0, phi)) + ypair(DuuF_apply(p, u0, phi, xi));

  ShapeDiagnostics d;
  d.xi0 = trimmed(xi);
  d.zeta0 = trimmed(zeta);
  d.psi0 = psi;
  d.nondegeneracy_value = den;
  d.shape_rho = num / den;
  return d;
}

}  // namespace dbcp
