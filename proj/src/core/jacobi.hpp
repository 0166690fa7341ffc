#pragma once

#include <array>
#include <complex>
#include <vector>

#include "core/errors.hpp"
#include "core/polynomial.hpp"

namespace qortho {

// Weight w(x) = (1-x)^alpha (1+x)^beta on [-1,1]; admissible when both
// exponents exceed -1.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;
  bool valid() const { return alpha > -1.0 && beta > -1.0; }
};

// Eigenvalue of the operator L = (1-x^2) d^2 + (beta-alpha-(alpha+beta+2)x) d
// on the degree-n monic Jacobi polynomial.
double jacobi_lambda(int n, const JacobiParams& jp);

// ln of tau_n = ||P_n||^2 under the Jacobi weight. The n = 0 case uses the
// Gamma(alpha+beta+1)-cancelled closed form so alpha+beta = -1 stays finite.
double log_tau(int n, const JacobiParams& jp);
double tau(int n, const JacobiParams& jp);

// Monic three-term recurrence P_{k+1} = (x - A[k]) P_k - B[k] P_{k-1},
// with B[0] = 0. Arrays cover indices 0..nmax, enough to build P_{nmax+1}.
struct Recurrence {
  std::vector<double> A;
  std::vector<double> B;
  int nmax() const { return static_cast<int>(A.size()) - 1; }
};
Recurrence jacobi_recurrence(int nmax, const JacobiParams& jp);

// (1-x^2) P'_nu = c1 P_{nu+1} + c0 P_nu + cm1 P_{nu-1}.
// Degenerate denominators (2nu+alpha+beta in {0, +-1}) raise an error.
struct StructureCoeffs {
  double c1 = 0.0;
  double c0 = 0.0;
  double cm1 = 0.0;
};
StructureCoeffs structure_coeffs(int nu, const JacobiParams& jp);

// L[q] in coefficient space.
template <typename T>
Polynomial<T> apply_operator(const Polynomial<T>& q, const JacobiParams& jp) {
  const Polynomial<T> one_minus_x2(std::vector<T>{T(1), T(0), T(-1)});
  const Polynomial<T> drift(
      std::vector<T>{T(jp.beta - jp.alpha), T(-(jp.alpha + jp.beta + 2.0))});
  const Polynomial<T> dq = q.derivative();
  return one_minus_x2 * dq.derivative() + drift * dq;
}

// Monic Jacobi coefficient table. Coefficient space degrades past degree ~40;
// callers enforce their own caps (see qfamily::kCoeffCap).
class JacobiBasis {
 public:
  JacobiBasis(int nmax, const JacobiParams& jp);
  int nmax() const { return static_cast<int>(polys_.size()) - 1; }
  const JacobiParams& params() const { return jp_; }
  const Recurrence& recurrence() const { return rec_; }
  const Polynomial<double>& poly(int n) const { return polys_.at(n); }
  double norm(int n) const { return norms_.at(n); }  // tau_n via B-products

 private:
  JacobiParams jp_;
  Recurrence rec_;
  std::vector<Polynomial<double>> polys_;
  std::vector<double> norms_;
};

// Gauss-Jacobi rule: integrates polynomials of degree <= 2n-1 against the
// Jacobi weight exactly. Weights are assembled in log space.
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};
QuadRule gauss_jacobi(int n, const JacobiParams& jp);

// Monomial moments m_k = \int x^k dmu_{alpha,beta}, k = 0..kmax, by the
// stable first-order recursion (integration by parts), m_0 = tau_0.
std::vector<double> jacobi_moments(int kmax, const JacobiParams& jp);

// Value-space evaluation of a monic recurrence family at a point z:
// values and first two derivatives of P_k(z) for the trailing window
// k in [max(0, n-depth+1), n], all scaled by a common factor exp(exponent).
// Needs rec.A/B defined on 0..n-1. Immune to over/underflow in n.
struct ScaledTail {
  int n = 0;
  int lo = 0;
  double exponent = 0.0;
  // vals[j][d]: scaled d-th derivative of P_{lo+j}(z), d = 0..2
  std::vector<std::array<std::complex<double>, 3>> vals;

  const std::array<std::complex<double>, 3>& at(int idx) const {
    return vals.at(static_cast<std::size_t>(idx - lo));
  }
  double log_abs(int idx, int d) const;  // ln |P_idx^{(d)}(z)|
};
ScaledTail eval_monic_tail(std::complex<double> z, int n, int depth,
                           const Recurrence& rec);

// Real-axis specialization; same window convention, real payload.
struct ScaledTailReal {
  int n = 0;
  int lo = 0;
  double exponent = 0.0;
  std::vector<std::array<double, 3>> vals;
  const std::array<double, 3>& at(int idx) const {
    return vals.at(static_cast<std::size_t>(idx - lo));
  }
};
ScaledTailReal eval_monic_tail(double x, int n, int depth, const Recurrence& rec);

}  // namespace qortho
