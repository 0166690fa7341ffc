#include "core/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qortho {

namespace {

void require_params(const JacobiParams& jp) {
  if (!jp.valid())
    fail(ErrorCode::InvalidArgument,
         "jacobi parameters require alpha > -1 and beta > -1");
}

template <typename S>
double max_abs6(const std::array<S, 3>& a, const std::array<S, 3>& b) {
  double m = 0.0;
  for (int d = 0; d < 3; ++d)
    m = std::max({m, std::abs(a[d]), std::abs(b[d])});
  return m;
}

// Shared recurrence walk for real and complex arguments. Keeps the trailing
// `depth` rows under one exponent; renormalizes when magnitudes leave
// [1e-15, 1e15]. The band is kept narrow so downstream code may multiply two
// mantissas from different tails without overflow.
template <typename S>
void tail_impl(S z, int n, int depth, const Recurrence& rec, int& lo_out,
               double& exponent_out, std::vector<std::array<S, 3>>& out) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "tail evaluation needs n >= 0");
  if (static_cast<int>(rec.A.size()) < n || static_cast<int>(rec.B.size()) < n)
    fail(ErrorCode::InvalidArgument,
         "recurrence too short for requested degree " + std::to_string(n));
  const std::size_t keep =
      static_cast<std::size_t>(std::clamp(depth, 1, n + 1));

  std::array<S, 3> prev{S(0), S(0), S(0)};
  std::array<S, 3> cur{S(1), S(0), S(0)};
  std::vector<std::array<S, 3>> buf;
  buf.reserve(keep + 1);
  buf.push_back(cur);
  double exponent = 0.0;

  for (int k = 0; k < n; ++k) {
    const S zmA = z - S(rec.A[k]);
    const double Bk = rec.B[k];
    std::array<S, 3> nxt;
    nxt[0] = zmA * cur[0] - Bk * prev[0];
    nxt[1] = cur[0] + zmA * cur[1] - Bk * prev[1];
    nxt[2] = 2.0 * cur[1] + zmA * cur[2] - Bk * prev[2];
    prev = cur;
    cur = nxt;
    buf.push_back(cur);
    if (buf.size() > keep) buf.erase(buf.begin());

    const double m = max_abs6(prev, cur);
    if (m > 1e15 || (m > 0.0 && m < 1e-15)) {
      const double inv = 1.0 / m;
      for (auto& v : prev) v *= inv;
      for (auto& v : cur) v *= inv;
      for (auto& row : buf)
        for (auto& v : row) v *= inv;
      exponent += std::log(m);
    }
  }
  lo_out = n - static_cast<int>(buf.size()) + 1;
  exponent_out = exponent;
  out = std::move(buf);
}

}  // namespace

double jacobi_lambda(int n, const JacobiParams& jp) {
  return -static_cast<double>(n) * (n + 1.0 + jp.alpha + jp.beta);
}

double log_tau(int n, const JacobiParams& jp) {
  require_params(jp);
  if (n < 0) fail(ErrorCode::InvalidArgument, "log_tau needs n >= 0");
  const double a = jp.alpha, b = jp.beta;
  if (n == 0)
    return (a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
           std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
  const double nn = n;
  return (2.0 * nn + a + b + 1.0) * std::numbers::ln2 +
         std::lgamma(nn + a + 1.0) + std::lgamma(nn + b + 1.0) +
         std::lgamma(nn + 1.0) + std::lgamma(nn + a + b + 1.0) -
         std::lgamma(2.0 * nn + a + b + 2.0) -
         std::lgamma(2.0 * nn + a + b + 1.0);
}

double tau(int n, const JacobiParams& jp) { return std::exp(log_tau(n, jp)); }

Recurrence jacobi_recurrence(int nmax, const JacobiParams& jp) {
  require_params(jp);
  if (nmax < 0) fail(ErrorCode::InvalidArgument, "recurrence needs nmax >= 0");
  const double a = jp.alpha, b = jp.beta;
  Recurrence rec;
  rec.A.resize(nmax + 1);
  rec.B.resize(nmax + 1);
  rec.A[0] = (b - a) / (a + b + 2.0);
  rec.B[0] = 0.0;
  for (int k = 1; k <= nmax; ++k) {
    const double s = 2.0 * k + a + b;
    rec.A[k] = (b * b - a * a) / (s * (s + 2.0));
    if (k == 1) {
      // Closed form; the generic expression is 0/0 at alpha+beta = -1.
      rec.B[1] = 4.0 * (a + 1.0) * (b + 1.0) /
                 ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    } else {
      rec.B[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                 (s * s * (s * s - 1.0));
    }
  }
  return rec;
}

StructureCoeffs structure_coeffs(int nu, const JacobiParams& jp) {
  require_params(jp);
  if (nu < 0) fail(ErrorCode::InvalidArgument, "structure_coeffs needs nu >= 0");
  StructureCoeffs c;
  if (nu == 0) return c;  // P_0' = 0
  const double a = jp.alpha, b = jp.beta;
  const double s = 2.0 * nu + a + b;
  if (std::abs(s) < 1e-10 || std::abs(std::abs(s) - 1.0) < 1e-10)
    fail(ErrorCode::DegenerateDenominator,
         "structure relation denominator degenerate at nu = " +
             std::to_string(nu));
  c.c1 = -static_cast<double>(nu);
  c.c0 = 2.0 * nu * (a - b) * (nu + a + b + 1.0) / (s * (s + 2.0));
  // Equal to the raw quotient with the (nu+alpha+beta) factor cancelled
  // against B_nu's; finite wherever the guard admits.
  const double Bnu =
      (nu == 1) ? 4.0 * (a + 1.0) * (b + 1.0) /
                      ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0))
                : 4.0 * nu * (nu + a) * (nu + b) * (nu + a + b) /
                      (s * s * (s * s - 1.0));
  c.cm1 = (nu + a + b + 1.0) * Bnu;
  return c;
}

JacobiBasis::JacobiBasis(int nmax, const JacobiParams& jp)
    : jp_(jp), rec_(jacobi_recurrence(std::max(nmax, 1), jp)) {
  if (nmax < 0) fail(ErrorCode::InvalidArgument, "basis needs nmax >= 0");
  polys_.reserve(nmax + 1);
  polys_.push_back(Polynomial<double>(std::vector<double>{1.0}));
  if (nmax >= 1)
    polys_.push_back(Polynomial<double>(std::vector<double>{-rec_.A[0], 1.0}));
  for (int k = 1; k < nmax; ++k) {
    const Polynomial<double> x_shift(std::vector<double>{-rec_.A[k], 1.0});
    polys_.push_back(x_shift * polys_[k] - rec_.B[k] * polys_[k - 1]);
  }
  norms_.resize(nmax + 1);
  norms_[0] = tau(0, jp_);
  for (int k = 1; k <= nmax; ++k) norms_[k] = norms_[k - 1] * rec_.B[k];
}

namespace {

// Eigenvalues of a symmetric tridiagonal matrix (diag d, offdiag e) by the
// implicit-shift QL iteration; ascending on return.
std::vector<double> tridiag_eigenvalues(std::vector<double> d,
                                        std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  e.resize(static_cast<std::size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (m == l) break;
      if (iter++ == 60)
        fail(ErrorCode::NonConvergence, "tridiagonal eigensolve stalled");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

QuadRule gauss_jacobi(int n, const JacobiParams& jp) {
  require_params(jp);
  if (n < 1) fail(ErrorCode::InvalidArgument, "quadrature needs n >= 1");
  const Recurrence rec = jacobi_recurrence(n, jp);
  const double ltau = log_tau(n - 1, jp);

  // Nodes are the eigenvalues of the recurrence's Jacobi matrix; two Newton
  // polish steps push them to the last bit.
  std::vector<double> diag(rec.A.begin(), rec.A.begin() + n);
  std::vector<double> off(static_cast<std::size_t>(std::max(0, n - 1)));
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(rec.B[k]);
  const std::vector<double> guesses = tridiag_eigenvalues(diag, off);

  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = guesses[i];
    for (int it = 0; it < 8; ++it) {
      const ScaledTailReal t = eval_monic_tail(x, n, 2, rec);
      const double v = t.at(n)[0], dv = t.at(n)[1];
      if (dv == 0.0) break;
      double cand = x - v / dv;
      if (cand >= 1.0) cand = 0.5 * (x + 1.0);
      if (cand <= -1.0) cand = 0.5 * (x - 1.0);
      const bool done = std::abs(cand - x) <= 4e-16 * std::max(1.0, std::abs(x));
      x = cand;
      if (done) break;
    }
    const ScaledTailReal t = eval_monic_tail(x, n, 2, rec);
    // w_i = tau_{n-1} / (P_{n-1}(x_i) P_n'(x_i)); the product is positive by
    // interlacing, so assemble it from logs of absolute values.
    const double log_w = ltau - (std::log(std::abs(t.at(n - 1)[0])) + t.exponent) -
                         (std::log(std::abs(t.at(n)[1])) + t.exponent);
    rule.x[i] = x;
    rule.w[i] = std::exp(log_w);
  }

  for (int i = 1; i < n; ++i)
    if (!(rule.x[i] > rule.x[i - 1]))
      fail(ErrorCode::NonConvergence, "quadrature nodes failed to separate");
  double sum = 0.0;
  for (double w : rule.w) sum += w;
  const double t0 = tau(0, jp);
  if (!(std::abs(sum - t0) <= 1e-8 * t0))
    fail(ErrorCode::NonConvergence, "quadrature weights failed the mass check");
  return rule;
}

std::vector<double> jacobi_moments(int kmax, const JacobiParams& jp) {
  require_params(jp);
  if (kmax < 0) fail(ErrorCode::InvalidArgument, "moments need kmax >= 0");
  const double a = jp.alpha, b = jp.beta;
  std::vector<double> m(kmax + 1);
  m[0] = tau(0, jp);
  if (kmax >= 1) m[1] = (b - a) / (a + b + 2.0) * m[0];
  for (int k = 1; k < kmax; ++k)
    m[k + 1] = (k * m[k - 1] + (b - a) * m[k]) / (k + a + b + 2.0);
  return m;
}

double ScaledTail::log_abs(int idx, int d) const {
  return std::log(std::abs(at(idx)[static_cast<std::size_t>(d)])) + exponent;
}

ScaledTail eval_monic_tail(std::complex<double> z, int n, int depth,
                           const Recurrence& rec) {
  ScaledTail t;
  t.n = n;
  tail_impl(z, n, depth, rec, t.lo, t.exponent, t.vals);
  return t;
}

ScaledTailReal eval_monic_tail(double x, int n, int depth,
                               const Recurrence& rec) {
  ScaledTailReal t;
  t.n = n;
  tail_impl(x, n, depth, rec, t.lo, t.exponent, t.vals);
  return t;
}

}  // namespace qortho
