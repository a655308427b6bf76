#include "dbcp/extended.hpp"

#include <algorithm>
#include <cmath>

#include "dbcp/errors.hpp"

namespace dbcp {

namespace {

double kp2(int k) {
  double t = (double)k * M_PI;
  return t * t;
}

const double kSqrt2 = std::sqrt(2.0);

CosineSeries sized(const CosineSeries& u, int N) {
  CosineSeries out = materialized(u);
  out.a.resize((std::size_t)N, 0.0);
  return out;
}

ModelParams params_of(double sigma, const ExtendedPoint& w) {
  return ModelParams(sigma, w.lambda,
                     w.n_sym >= 2 ? std::optional<int>(w.n_sym) : std::nullopt);
}

// Writes one weighted column; rows are [ell | u-eq on amodes | v-eq on 1..N].
void put_column(Eigen::MatrixXd& M, int col, const std::vector<int>& amodes, int N, double r1,
                const CosineSeries& r2, const CosineSeries& r3) {
  M(0, col) = r1;
  for (std::size_t i = 0; i < amodes.size(); ++i) {
    int k = amodes[i];
    double c = (std::size_t)k <= r2.a.size() ? r2.a[(std::size_t)k - 1] : 0.0;
    M(1 + (Eigen::Index)i, col) = c / (kp2(k) * kSqrt2);
  }
  for (int j = 1; j <= N; ++j) {
    double c = (std::size_t)j <= r3.a.size() ? r3.a[(std::size_t)j - 1] : 0.0;
    M(1 + (Eigen::Index)amodes.size() + j - 1, col) = c / (kp2(j) * kSqrt2);
  }
}

void check_discretizable(const ExtendedPoint& w, int N) {
  if (N < 1) throw DimError("Galerkin dimension must be >= 1");
  if (w.n_sym < 1) throw BadInput("extended", "n_sym must be >= 1");
  CosineSeries ut = trimmed(materialized(w.u));
  if ((int)ut.a.size() > N) throw DimError("u has more modes than the Galerkin dimension");
  for (std::size_t i = 0; i < ut.a.size(); ++i)
    if (ut.a[i] != 0.0 && class_of((int)i + 1, w.n_sym) != ClassTag::A)
      throw DimError("u has support outside class A");
  if ((int)trimmed(materialized(w.v)).a.size() > N)
    throw DimError("v has more modes than the Galerkin dimension");
}

Eigen::VectorXd weighted_residual(const FeTriple& t, const std::vector<int>& amodes, int N) {
  Eigen::VectorXd r(1 + (Eigen::Index)amodes.size() + N);
  r[0] = t.r1;
  for (std::size_t i = 0; i < amodes.size(); ++i) {
    int k = amodes[i];
    double c = (std::size_t)k <= t.r2.a.size() ? t.r2.a[(std::size_t)k - 1] : 0.0;
    r[1 + (Eigen::Index)i] = c / (kp2(k) * kSqrt2);
  }
  for (int j = 1; j <= N; ++j) {
    double c = (std::size_t)j <= t.r3.a.size() ? t.r3.a[(std::size_t)j - 1] : 0.0;
    r[1 + (Eigen::Index)amodes.size() + j - 1] = c / (kp2(j) * kSqrt2);
  }
  return r;
}

CosineSeries unit_x_mode(int k) {
  CosineSeries u((std::size_t)k);
  u.a[(std::size_t)k - 1] = kSqrt2 / kp2(k);
  return u;
}

}  // namespace

NormalizationFunctional make_normalization(const CosineSeries& phi) {
  NormalizationFunctional ell;
  ell.rep = trimmed(materialized(phi));
  ell.rep_x2 = inner_x(ell.rep, ell.rep);
  if (!(ell.rep_x2 > 0.0)) throw BadInput("extended", "normalization representer is zero");
  return ell;
}

BasicNormalization<Interval> lift_normalization(const NormalizationFunctional& ell) {
  BasicNormalization<Interval> out;
  out.rep = ICosineSeries(ell.rep.a.size());
  for (std::size_t i = 0; i < ell.rep.a.size(); ++i) out.rep.a[i] = Interval(ell.rep.a[i]);
  // Enclosure of the true real inner product, not the rounded double.
  out.rep_x2 = inner_x(out.rep, out.rep);
  return out;
}

std::vector<int> classA_modes(int n_sym, int N) {
  if (n_sym < 1) throw BadInput("extended", "n_sym must be >= 1");
  std::vector<int> out;
  for (int k = n_sym; k <= N; k += 2 * n_sym) out.push_back(k);
  return out;
}

FeTriple Fe_apply(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell) {
  return Fe_eval(params_of(sigma, w), w.u, w.v, ell);
}

FeTriple DwFe_matvec(double sigma, const ExtendedPoint& w, const NormalizationFunctional& ell,
                     double lam_t, const CosineSeries& u_t, const CosineSeries& v_t) {
  ModelParams p = params_of(sigma, w);
  FeTriple t;
  t.r1 = ell(v_t);
  t.r2 = materialized(scaled(materialized(DlamF(p, w.u)), lam_t) + DuF_apply(p, w.u, u_t));
  t.r3 = materialized(scaled(materialized(DlamuF_apply(p, w.u, w.v)), lam_t) +
                      DuuF_apply(p, w.u, w.v, u_t) + DuF_apply(p, w.u, v_t));
  return t;
}

FeTriple DsigmaFe(double sigma, const ExtendedPoint& w) {
  ModelParams p = params_of(sigma, w);
  FeTriple t;
  t.r1 = 0.0;
  t.r2 = materialized(DsigF(p, w.u));
  t.r3 = materialized(DsigF(p, w.v));
  return t;
}

Eigen::MatrixXd assemble_DwFe(double sigma, const ExtendedPoint& w,
                              const NormalizationFunctional& ell, int N) {
  check_discretizable(w, N);
  ModelParams p = params_of(sigma, w);
  std::vector<int> amodes = classA_modes(w.n_sym, N);
  int na = (int)amodes.size();
  Eigen::MatrixXd M(1 + na + N, 1 + na + N);

  CosineSeries u = sized(w.u, N);
  CosineSeries v = sized(w.v, N);
  CosineSeries none;

  // lambda column: tangent (1, 0, 0).
  put_column(M, 0, amodes, N, 0.0, materialized(DlamF(p, u)),
             materialized(DlamuF_apply(p, u, v)));

  // u columns: tangent (0, unit-X mode k, 0); the v-equation picks up the
  // second-derivative coupling DuuF[v, u_t].
  for (int i = 0; i < na; ++i) {
    CosineSeries u_t = unit_x_mode(amodes[(std::size_t)i]);
    put_column(M, 1 + i, amodes, N, 0.0, materialized(DuF_apply(p, u, u_t)),
               materialized(DuuF_apply(p, u, v, u_t)));
  }

  // v columns: tangent (0, 0, unit-X mode j); the u-equation is unaffected.
  for (int j = 1; j <= N; ++j) {
    CosineSeries v_t = unit_x_mode(j);
    put_column(M, 1 + na + j - 1, amodes, N, ell(v_t), none,
               materialized(DuF_apply(p, u, v_t)));
  }
  return M;
}

double extended_residual_norm(double sigma, const ExtendedPoint& w,
                              const NormalizationFunctional& ell, int N) {
  check_discretizable(w, N);
  std::vector<int> amodes = classA_modes(w.n_sym, N);
  return weighted_residual(Fe_apply(sigma, w, ell), amodes, N).norm();
}

ExtendedPoint newton_extended(double sigma, const ExtendedPoint& w_init,
                              const NormalizationFunctional& ell, int N, double tol, int maxit,
                              int* iters_out) {
  check_discretizable(w_init, N);
  std::vector<int> amodes = classA_modes(w_init.n_sym, N);
  int na = (int)amodes.size();

  ExtendedPoint w = w_init;
  w.u = sized(w_init.u, N);
  w.v = sized(w_init.v, N);

  for (int it = 0;; ++it) {
    Eigen::VectorXd r = weighted_residual(Fe_apply(sigma, w, ell), amodes, N);
    if (r.norm() <= tol) {
      if (iters_out) *iters_out = it;
      return w;
    }
    if (it >= maxit) break;

    Eigen::MatrixXd M = assemble_DwFe(sigma, w, ell, N);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    if (lu.rcond() < 1e-14)
      throw SingularExtendedJacobian("derivative is numerically singular: candidate crossing is "
                                     "degenerate or the seed is off");
    Eigen::VectorXd d = lu.solve(-r);
    double scale = 1.0 + std::fabs(w.lambda) + norms(w.u).supBound + norms(w.v).supBound;
    if (!d.allFinite() || d.cwiseAbs().maxCoeff() > 1e10 * scale)
      throw SingularExtendedJacobian("Newton step blew up");

    w.lambda += d[0];
    for (int i = 0; i < na; ++i) {
      int k = amodes[(std::size_t)i];
      w.u.a[(std::size_t)k - 1] += d[1 + i] * kSqrt2 / kp2(k);
    }
    for (int j = 1; j <= N; ++j) w.v.a[(std::size_t)j - 1] += d[1 + na + j - 1] * kSqrt2 / kp2(j);
  }
  throw NoConvergence("extended", "Newton did not reach the residual tolerance");
}

std::pair<ExtendedPoint, NormalizationFunctional> seed_from_record(const BifurcationRecord& rec) {
  ExtendedPoint w;
  w.lambda = rec.lambda0;
  w.n_sym = rec.n_sym;
  if (w.n_sym < 1) throw BadInput("extended", "record carries no symmetry order");
  w.u = materialized(rec.u0);
  for (std::size_t i = 0; i < w.u.a.size(); ++i)
    if (class_of((int)i + 1, w.n_sym) != ClassTag::A) w.u.a[i] = 0.0;
  w.v = materialized(rec.phi0);
  return {std::move(w), make_normalization(rec.phi0)};
}

}  // namespace dbcp
