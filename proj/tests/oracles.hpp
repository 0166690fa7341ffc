// Independent reference computations for the test suites. Everything here
// reaches results by a different route than the library: closed-form moment
// recursions run downward, orthogonalization happens in the monomial basis
// over long double moments, and expansion coefficients come from a
// least-squares fit instead of the analytic cascade.
#pragma once

#include <functional>
#include <vector>

#include "core/polynomial.hpp"
#include "core/qfamily.hpp"

namespace oracle {

// Moments of the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1] via the
// integration-by-parts recursion m_{k+1} = (k m_{k-1} + (beta-alpha) m_k) /
// (k + alpha + beta + 2), seeded by the Beta-function value of m_0.
std::vector<long double> alphabeta_moments(double alpha, double beta,
                                           int kmax);

// Moments of dmu = rho^{-1} dmu_{alpha,beta} through the power series of
// 1/rho. Requires every root of rho to have modulus > 1 (true for all test
// measures), so the series converges geometrically on [-1,1].
std::vector<long double> mu_moments(double alpha, double beta,
                                    const qortho::Polynomial<double>& rho,
                                    int kmax);

// Closed-form sequences for the Legendre weight: int x^k/(2-x) dx and
// int x^k/(4-x^2) dx on [-1,1], run downward for stability and self-checked
// against I_0 = ln 3 and J_0 = (ln 3)/2.
std::vector<long double> m1_moments(int kmax);
std::vector<long double> m2_moments(int kmax);

// Monic orthogonal polynomials straight from a moment sequence by full
// Gram-Schmidt over monomials. Hankel conditioning limits trust to n ~ 15.
struct GramSchmidt {
  std::vector<std::vector<long double>> coeffs;  // ascending, p_0..p_nmax
  std::vector<long double> norm;                 // <p_n, p_n>
  std::vector<long double> A, B;                 // monic three-term recurrence
};
GramSchmidt gram_schmidt(const std::vector<long double>& moments, int nmax);

// Trapezoid rule on x = cos(theta) against the Jacobi weight; the cosine
// substitution makes the integrand's odd extension smooth for
// alpha, beta >= 0, so panel doubling converges superalgebraically.
double trapezoid_cos(const std::function<double(double)>& f, double alpha,
                     double beta, double tol = 1e-12);

// Triangular monomial-basis solve of L[y] = lambda_n * Ln with y monic of
// degree n and the kernel direction fixed by <y, 1>_{alpha,beta} = 0.
// Ln: ascending long double coefficients of the degree-n target.
std::vector<double> operator_solve(double alpha, double beta,
                                   const std::vector<long double>& Ln, int n);

// Least-squares fit of R * Qhat_n' over the window {Qhat'_{n-k}},
// k = -(m+1)..(m+1), under the Jacobi inner product with an exact rule.
// Returns 2m+3 coefficients, index i <-> k = i - (m+1). Needs n >= 2m+2
// and n+m+1 within the family's range.
std::vector<double> theta_lsq(qortho::QFamily& fam, int n);

}  // namespace oracle
