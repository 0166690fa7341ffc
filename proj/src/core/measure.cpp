#include "core/measure.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

namespace qortho {

namespace {

using cd = std::complex<double>;

double dist_to_segment(cd z) {
  if (std::abs(z.real()) <= 1.0) return std::abs(z.imag());
  return std::hypot(std::abs(z.real()) - 1.0, z.imag());
}

}  // namespace

Measure Measure::validate(const MeasureSpec& spec) {
  if (!spec.params.valid())
    fail(ErrorCode::InvalidMeasure,
         "measure parameters require alpha > -1 and beta > -1");
  if (!(spec.rho_lead != 0.0) || !std::isfinite(spec.rho_lead))
    fail(ErrorCode::InvalidMeasure, "rho leading coefficient must be nonzero");

  const auto& roots = spec.rho_roots;
  const std::size_t m = roots.size();
  for (const cd& nu : roots)
    if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()))
      fail(ErrorCode::InvalidMeasure, "rho root is not finite");

  // Conjugate closure: greedily pair each off-axis root with its mirror.
  std::vector<bool> used(m, false);
  std::vector<cd> real_roots;
  std::vector<cd> pair_reps;
  for (std::size_t i = 0; i < m; ++i) {
    if (used[i]) continue;
    const cd nu = roots[i];
    const double tol = 1e-12 * std::max(1.0, std::abs(nu));
    if (std::abs(nu.imag()) <= tol) {
      used[i] = true;
      real_roots.push_back(nu);
      continue;
    }
    bool paired = false;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - std::conj(nu)) <= tol) {
        used[i] = used[j] = true;
        pair_reps.push_back(nu);
        paired = true;
        break;
      }
    }
    if (!paired)
      fail(ErrorCode::InvalidMeasure,
           "rho roots are not closed under conjugation");
  }

  for (const cd& nu : roots)
    if (dist_to_segment(nu) <= 1e-10)
      fail(ErrorCode::InvalidMeasure,
           "rho vanishes on or too near [-1,1] (root within 1e-10 of the "
           "segment)");

  Polynomial<double> rho(std::vector<double>{spec.rho_lead});
  for (const cd& nu : real_roots)
    rho = rho * Polynomial<double>(std::vector<double>{-nu.real(), 1.0});
  for (const cd& nu : pair_reps)
    rho = rho * Polynomial<double>(
                    std::vector<double>{std::norm(nu), -2.0 * nu.real(), 1.0});

  if (!(rho(0.0) > 0.0))
    fail(ErrorCode::InvalidMeasure, "rho is not positive on [-1,1]");

  return Measure(spec, std::move(rho));
}

const QuadRule& QuadCache::rule(int n) {
  auto it = rules_.find(n);
  if (it == rules_.end()) it = rules_.emplace(n, gauss_jacobi(n, jp_)).first;
  return it->second;
}

namespace {

std::vector<double> mu_weights(const Measure& meas, const QuadRule& rule) {
  std::vector<double> wm(rule.w.size());
  for (std::size_t i = 0; i < rule.w.size(); ++i)
    wm[i] = rule.w[i] / meas.rho_at(rule.x[i]);
  return wm;
}

}  // namespace

std::vector<double> integrate_mu_vec(
    const Measure& meas, QuadCache& cache,
    const std::function<void(const QuadRule&, const std::vector<double>&,
                             std::vector<double>&)>& accumulate,
    int ncomp, int n_start, double tol, const std::vector<double>& scale_floor,
    int node_budget) {
  if (ncomp <= 0) return {};
  int n = std::max(n_start, 8);
  double mass = 0.0;
  auto eval = [&](int nodes) {
    const QuadRule& rule = cache.rule(nodes);
    const std::vector<double> wm = mu_weights(meas, rule);
    mass = 0.0;
    for (double w : wm) mass += w;
    std::vector<double> out(ncomp, 0.0);
    accumulate(rule, wm, out);
    return out;
  };
  std::vector<double> prev = eval(n);
  while (true) {
    if (2 * n > node_budget)
      fail(ErrorCode::BudgetExceeded,
           "mu-integration did not converge within " +
               std::to_string(node_budget) + " nodes");
    n *= 2;
    std::vector<double> cur = eval(n);
    // Two exact-to-roundoff rules still differ by the summation noise floor,
    // which grows with the node count; below it there is nothing to resolve.
    const double noise =
        16.0 * std::numeric_limits<double>::epsilon() * n * mass;
    bool ok = true;
    for (int i = 0; i < ncomp; ++i) {
      const double scale =
          std::max(i < static_cast<int>(scale_floor.size()) ? scale_floor[i]
                                                            : 0.0,
                   std::abs(cur[i]));
      if (std::abs(cur[i] - prev[i]) > std::max(tol * scale, noise)) {
        ok = false;
        break;
      }
    }
    if (ok) return cur;
    prev = std::move(cur);
  }
}

double integrate_mu(const Measure& meas, QuadCache& cache,
                    const std::function<double(double)>& f, int n_start,
                    double tol, double scale_floor, int node_budget) {
  auto acc = [&f](const QuadRule& rule, const std::vector<double>& wm,
                  std::vector<double>& out) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += wm[i] * f(rule.x[i]);
    out[0] = s;
  };
  return integrate_mu_vec(meas, cache, acc, 1, n_start, tol, {scale_floor},
                          node_budget)[0];
}

double inner_mu(const Measure& meas, QuadCache& cache,
                const Polynomial<double>& f, const Polynomial<double>& g,
                double tol, int node_budget) {
  const int deg = std::max(f.degree(), 0) + std::max(g.degree(), 0);
  const double t0 = tau(0, meas.params());
  return integrate_mu(
      meas, cache, [&](double x) { return f(x) * g(x); }, deg / 2 + 16, tol,
      t0, node_budget);
}

MuBasis::Run MuBasis::run_at(const Measure& meas, const QuadRule& rule,
                             int nmax) {
  const std::size_t N = rule.x.size();
  const std::vector<double> wm = mu_weights(meas, rule);

  Run run;
  run.rec.A.assign(nmax + 1, 0.0);
  run.rec.B.assign(nmax + 1, 0.0);
  run.lognorms.assign(nmax + 1, 0.0);

  // Node values of L_k, renormalized per level; E_k tracks the peeled-off
  // log factor so norms never underflow however large nmax is.
  std::vector<double> u_prev(N, 0.0), u_cur(N, 1.0), tmp(N);
  double E_prev = 0.0, E_cur = 0.0;
  for (int k = 0; k <= nmax; ++k) {
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double t = wm[i] * u_cur[i] * u_cur[i];
      s0 += t;
      s1 += t * rule.x[i];
    }
    if (!(s0 > 0.0))
      fail(ErrorCode::NonConvergence, "stieltjes norm collapsed at level " +
                                          std::to_string(k));
    run.rec.A[k] = s1 / s0;
    run.lognorms[k] = std::log(s0) + 2.0 * E_cur;
    run.rec.B[k] = (k == 0) ? 0.0
                            : std::exp(run.lognorms[k] - run.lognorms[k - 1]);
    if (k == nmax) break;

    const double b_scaled =
        (k == 0) ? 0.0 : run.rec.B[k] * std::exp(E_prev - E_cur);
    double mx = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      tmp[i] = (rule.x[i] - run.rec.A[k]) * u_cur[i] - b_scaled * u_prev[i];
      mx = std::max(mx, std::abs(tmp[i]));
    }
    if (!(mx > 0.0))
      fail(ErrorCode::NonConvergence, "stieltjes recurrence collapsed at level " +
                                          std::to_string(k));
    const double inv = 1.0 / mx;
    u_prev = u_cur;
    E_prev = E_cur;
    for (std::size_t i = 0; i < N; ++i) u_cur[i] = tmp[i] * inv;
    E_cur += std::log(mx);
  }
  return run;
}

MuBasis::MuBasis(const Measure& meas, int nmax, QuadCache& cache,
                 int node_budget, double tol) {
  if (nmax < 0) fail(ErrorCode::InvalidArgument, "basis needs nmax >= 0");
  int n = 2 * nmax + 64;
  Run prev = run_at(meas, cache.rule(n), nmax);
  while (true) {
    if (2 * n > node_budget)
      fail(ErrorCode::BudgetExceeded,
           "stieltjes procedure did not converge within " +
               std::to_string(node_budget) + " nodes");
    n *= 2;
    Run cur = run_at(meas, cache.rule(n), nmax);
    double worst = 0.0;
    for (int k = 0; k <= nmax; ++k) {
      worst = std::max(worst, std::abs(cur.rec.A[k] - prev.rec.A[k]));
      if (k > 0)
        worst = std::max(worst, std::abs(cur.rec.B[k] - prev.rec.B[k]) /
                                    cur.rec.B[k]);
    }
    if (worst <= tol) {
      rec_ = std::move(cur.rec);
      lognorms_ = std::move(cur.lognorms);
      nodes_used_ = n;
      break;
    }
    prev = std::move(cur);
  }
  norms_.resize(lognorms_.size());
  for (std::size_t k = 0; k < lognorms_.size(); ++k)
    norms_[k] = std::exp(lognorms_[k]);
}

Polynomial<double> MuBasis::poly(int n) const {
  if (n < 0 || n > nmax())
    fail(ErrorCode::InvalidArgument, "basis polynomial index out of range");
  Polynomial<double> pm1;
  Polynomial<double> p(std::vector<double>{1.0});
  for (int k = 0; k < n; ++k) {
    const Polynomial<double> shift(std::vector<double>{-rec_.A[k], 1.0});
    Polynomial<double> next = shift * p - rec_.B[k] * pm1;
    pm1 = std::move(p);
    p = std::move(next);
  }
  return p;
}

}  // namespace qortho
