#pragma once

// Cyclic symmetry T_n u(x) = -u(x + 1/n) on the 2-periodic extension, the
// induced splitting of cosine series into classes A/B/C by wave number, the
// annihilator polynomials m_a(t)=t-1, m_b(t)=t^{n-1}+...+1, m_c(t)=t^n+1,
// and the rigorous classification of kernel functions by point tests.

#include <optional>

#include "dbcp/interval.hpp"
#include "dbcp/spectral.hpp"

namespace dbcp {

enum class ClassTag { A, B, C };

// Class of the mode cos(k pi x) under T_n. On that mode T_n acts (in the
// complex picture) as multiplication by omega = -exp(-i k pi / n), so
//   m_a(omega) = 0  iff  k == n (mod 2n)      (odd multiples of n)
//   m_b(omega) = 0  iff  k == n (mod 2) and not A
//   m_c(omega) = 0  iff  k != n (mod 2).
// Note even multiples of n are not fixed points: omega = -1 there.
ClassTag class_of(int k, int n);

// Zero every coefficient whose class differs from tag. The pending Laplacian
// symbol commutes with the mode selection, so it is preserved.
template <class S>
BasicCosineSeries<S> project_class(const BasicCosineSeries<S>& u, int n, ClassTag tag) {
  BasicCosineSeries<S> out = u;
  for (std::size_t i = 0; i < out.a.size(); ++i)
    if (class_of((int)i + 1, n) != tag) out.a[i] = S(0.0);
  return out;
}

// Exact coefficient realization of T_n on the 2-periodic basis:
//   cos_k -> -cos(a) cos_k - sin(a) sin_k ... rotated by a = k pi / n and
// negated; right angles and multiples of pi use exact constants so class-A
// fixed points are preserved bit for bit.
TrigSeries2 apply_Tn(const TrigSeries2& v, int n);

// || m_tag(T_n) v ||_L2(0,2); vanishes (to rounding) iff v lies in the
// subspace the polynomial annihilates.
double annihilator_residual(const TrigSeries2& v, int n, ClassTag tag);

// Sup-norm embedding constant: ||u||_inf <= sum|a_k| <= C1 ||u||_X with
// C1 = sqrt(2 zeta(4))/pi^2 = 1/sqrt(45) = 0.14907...
const Interval& c1bar();

struct ScenarioRecord {
  bool n_even;
  ClassTag kernel_class;         // B or C
  bool kernel_even_about_half;   // parity of the kernel function about x=1/2
  char case_label;               // 'a'..'d'
};

// Rigorous point tests on an enclosure of the kernel function phi:
//   phi(1/2n) != 0 rules out class A; phi(0)+-phi(1) != 0 rules out C or B
// depending on the parity of n. x_dist adds slack for a true kernel within
// X-distance x_dist of phi (point values move by at most c1bar * x_dist).
// Returns nullopt when no condition verifies rigorously (or the tests
// contradict each other, which proves phi is not a pure class member).
std::optional<ScenarioRecord> classify_kernel(const ICosineSeries& phi, int n,
                                              double x_dist = 0.0);

}  // namespace dbcp
