#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "core/polynomial.hpp"

namespace qortho {

struct RootResult {
  std::vector<std::complex<double>> roots;  // sorted by (Re, Im)
  double residual = 0.0;  // max scaled |p(root)|, coefficient mode only
  int sweeps = 0;
  bool converged = false;
  bool suspect = false;  // a polish step met |p'| ~ 0 (multiple/clustered root)
};

// Aberth-Ehrlich simultaneous iteration on explicit coefficients.
// Intended for moderate degrees; conditioning is the caller's problem.
RootResult find_roots(const Polynomial<std::complex<double>>& p, unsigned seed = 0);
RootResult find_roots(const Polynomial<double>& p, unsigned seed = 0);

// Aberth-Ehrlich driven by a Newton-ratio functor f(z) = p(z)/p'(z), for
// polynomials reachable only through stable value-space evaluation.
struct FunctorOptions {
  int degree = 0;
  std::complex<double> center{0.0, 0.0};
  double radius = 1.0;
  unsigned seed = 0;
  int max_sweeps = 500;
  double tol = 1e-13;
};
RootResult find_roots(
    const std::function<std::complex<double>(std::complex<double>)>& newton_ratio,
    const FunctorOptions& opt);

// Real zeros of f on (a, b): sign scan on a Chebyshev-angle grid (clusters
// toward the endpoints, matching how orthogonal-polynomial zeros bunch),
// then bisection and a guarded Newton polish. expected_count sizes the grid.
std::vector<double> real_zeros(const std::function<double(double)>& f,
                               const std::function<double(double)>& df,
                               int expected_count, double a = -1.0,
                               double b = 1.0);

}  // namespace qortho
