#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "core/jacobi.hpp"
#include "core/polynomial.hpp"

namespace qortho {

struct MeasureSpec {
  JacobiParams params;
  double rho_lead = 1.0;
  std::vector<std::complex<double>> rho_roots;
  int m() const { return static_cast<int>(rho_roots.size()); }
};

// A validated measure dmu = rho^{-1} dmu_{alpha,beta}. Admissibility:
// conjugate-closed roots, every root farther than 1e-10 from [-1,1]
// (which also rejects endpoint zeros), rho > 0 on the segment.
// The root/sign test is exact: a continuous rho with no roots near the
// segment cannot change sign there, so positivity reduces to rho(0) > 0.
class Measure {
 public:
  static Measure validate(const MeasureSpec& spec);
  const MeasureSpec& spec() const { return spec_; }
  const JacobiParams& params() const { return spec_.params; }
  int m() const { return spec_.m(); }
  const Polynomial<double>& rho() const { return rho_; }
  double rho_at(double x) const { return rho_(x); }

 private:
  Measure(MeasureSpec spec, Polynomial<double> rho)
      : spec_(std::move(spec)), rho_(std::move(rho)) {}
  MeasureSpec spec_;
  Polynomial<double> rho_;
};

// Gauss-Jacobi rules memoized per node count, fixed (alpha, beta).
class QuadCache {
 public:
  explicit QuadCache(const JacobiParams& jp) : jp_(jp) {}
  const QuadRule& rule(int n);
  const JacobiParams& params() const { return jp_; }

 private:
  JacobiParams jp_;
  std::map<int, QuadRule> rules_;
};

inline constexpr int kNodeBudget = 1 << 14;

// Adaptive mu-integration of a vector integrand. accumulate(rule, mu_w, out)
// fills the ncomp component integrals at one rule (mu_w are the rho-corrected
// weights). Nodes double until every component moves by at most
// tol * max(scale_floor[i], |value[i]|); exceeding node_budget raises
// BudgetExceeded. 1/rho is analytic near [-1,1], so convergence is geometric.
std::vector<double> integrate_mu_vec(
    const Measure& meas, QuadCache& cache,
    const std::function<void(const QuadRule&, const std::vector<double>&,
                             std::vector<double>&)>& accumulate,
    int ncomp, int n_start, double tol, const std::vector<double>& scale_floor,
    int node_budget = kNodeBudget);

double integrate_mu(const Measure& meas, QuadCache& cache,
                    const std::function<double(double)>& f, int n_start,
                    double tol = 1e-13, double scale_floor = 0.0,
                    int node_budget = kNodeBudget);

// <f, g>_mu for coefficient-space polynomials.
double inner_mu(const Measure& meas, QuadCache& cache,
                const Polynomial<double>& f, const Polynomial<double>& g,
                double tol = 1e-13, int node_budget = kNodeBudget);

// Monic orthogonal basis L_n for mu, built by the discretized Stieltjes
// procedure: recurrence coefficients from node values, node count doubled
// until A and B settle to `tol`. Norms l_n are carried in log form so the
// construction cannot underflow at large n.
class MuBasis {
 public:
  MuBasis(const Measure& meas, int nmax, QuadCache& cache,
          int node_budget = kNodeBudget, double tol = 1e-12);
  int nmax() const { return static_cast<int>(rec_.A.size()) - 1; }
  const Recurrence& recurrence() const { return rec_; }
  double l(int n) const { return norms_.at(n); }
  double log_l(int n) const { return lognorms_.at(n); }
  int nodes_used() const { return nodes_used_; }
  Polynomial<double> poly(int n) const;  // coefficient-space reconstruction

 private:
  struct Run {
    Recurrence rec;
    std::vector<double> lognorms;
  };
  static Run run_at(const Measure& meas, const QuadRule& rule, int nmax);

  Recurrence rec_;
  std::vector<double> norms_, lognorms_;
  int nodes_used_ = 0;
};

}  // namespace qortho
