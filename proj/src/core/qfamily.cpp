#include "core/qfamily.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "core/errors.hpp"
#include "core/roots.hpp"

namespace qortho {
namespace {

using cd = std::complex<double>;

double dist_to_interval(cd z) {
  if (std::abs(z.real()) <= 1.0) return std::abs(z.imag());
  return std::hypot(std::abs(z.real()) - 1.0, z.imag());
}

int check_nmax(int nmax, int m) {
  if (nmax < m + 1)
    fail(ErrorCode::InvalidArgument, "n_max must be at least m+1");
  return nmax;
}

// Upper bound for |R| on [-1,1].
double coeff_sum(const Polynomial<double>& p) {
  double s = 0.0;
  for (double c : p.coeffs()) s += std::abs(c);
  return s;
}

}  // namespace

std::complex<double> ZetaSpec::at(int n) const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "zeta is defined for n >= 1");
  if (!use_sequence) return constant;
  if (n > static_cast<int>(sequence.size()))
    fail(ErrorCode::InvalidArgument,
         "zeta sequence has no entry for n = " + std::to_string(n));
  return sequence[static_cast<std::size_t>(n - 1)];
}

QFamily::QFamily(Measure meas, int nmax, ZetaSpec zeta, unsigned seed)
    : meas_(std::move(meas)),
      nmax_(check_nmax(nmax, meas_.m())),
      nmax_mu_(nmax_ + meas_.m() + 1),
      zeta_(std::move(zeta)),
      seed_(seed),
      cache_(meas_.params()),
      mu_(meas_, nmax_mu_, cache_),
      jac_rec_(jacobi_recurrence(nmax_mu_ + 2, meas_.params())),
      jbasis_(std::min(nmax_mu_, kCoeffCap), meas_.params()) {
  if (zeta_.use_sequence &&
      static_cast<int>(zeta_.sequence.size()) < nmax_)
    fail(ErrorCode::InvalidArgument, "zeta sequence must cover n = 1..n_max");
  taus_.resize(nmax_mu_ + 1);
  log_taus_.resize(nmax_mu_ + 1);
  for (int k = 0; k <= nmax_mu_; ++k) {
    log_taus_[k] = log_tau(k, params());
    taus_[k] = std::exp(log_taus_[k]);
  }
  const int zcount = zeta_.use_sequence ? nmax_ : 1;
  for (int i = 1; i <= zcount; ++i) {
    const cd z = zeta_.use_sequence ? zeta_.at(i) : zeta_.constant;
    if (dist_to_interval(z) <= 1e-8) {
      warnings_.push_back(
          "zeta" + (zeta_.use_sequence ? " for n = " + std::to_string(i) : std::string()) +
          " lies within 1e-8 of [-1,1]; zero placement is ill-conditioned");
      if (!zeta_.use_sequence) break;
    }
  }
}

void QFamily::require_range(int n, int lo, const char* what) const {
  if (n < lo || n > nmax_)
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " requires " + std::to_string(lo) +
             " <= n <= n_max (= " + std::to_string(nmax_) + "), got n = " +
             std::to_string(n));
}

const std::vector<double>& QFamily::b_row(int n) {
  if (n < 0 || n > nmax_mu_)
    fail(ErrorCode::InvalidArgument, "b_row index out of range");
  auto it = b_rows_.find(n);
  if (it != b_rows_.end()) return it->second;

  // b_{n,n-k} = <L_n, P_{n-k}>_{alpha,beta} / tau_{n-k}; the (n+1)-node rule
  // is exact for these degree <= 2n integrands.
  const int m_eff = std::min(m(), n);
  const QuadRule& rule = cache_.rule(n + 1);
  std::vector<double> row(static_cast<std::size_t>(m_eff) + 1, 0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const ScaledTailReal lt = eval_monic_tail(rule.x[i], n, 1, mu_.recurrence());
    const ScaledTailReal pt =
        eval_monic_tail(rule.x[i], n, m_eff + 1, jac_rec_);
    const double lv = lt.at(n)[0];
    for (int k = 0; k <= m_eff; ++k) {
      const double factor =
          std::exp(lt.exponent + pt.exponent - log_taus_[static_cast<std::size_t>(n - k)]);
      row[static_cast<std::size_t>(k)] += rule.w[i] * lv * pt.at(n - k)[0] * factor;
    }
  }
  if (std::abs(row[0] - 1.0) > 1e-10)
    fail(ErrorCode::NonConvergence,
         "monic normalization of connection row " + std::to_string(n) +
             " failed: b_{n,n} = " + std::to_string(row[0]));
  row[0] = 1.0;
  return b_rows_.emplace(n, std::move(row)).first->second;
}

std::vector<double> QFamily::gammas(int n) {
  const std::vector<double>& row = b_row(n);
  std::vector<double> g(row.size());
  const double ln = lambda(n);
  for (std::size_t k = 0; k < row.size(); ++k)
    g[k] = (ln / lambda(n - static_cast<int>(k))) * row[k];
  return g;
}

Polynomial<double> QFamily::qhat_poly(int n) {
  if (n <= m())
    fail(ErrorCode::InvalidArgument, "qhat_poly is defined for n > m");
  require_range(n, m() + 1, "qhat_poly");
  if (n > jbasis_.nmax() || n > kCoeffCap)
    fail(ErrorCode::InvalidArgument,
         "coefficient space is capped at degree " + std::to_string(kCoeffCap));
  const std::vector<double> g = gammas(n);
  Polynomial<double> sum;
  for (std::size_t k = 0; k < g.size(); ++k)
    sum += g[k] * jbasis_.poly(n - static_cast<int>(k));
  return sum;
}

Polynomial<std::complex<double>> QFamily::q_poly(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "q_poly needs n >= 0");
  if (n == 0) return Polynomial<cd>(std::vector<cd>{cd(1.0, 0.0)});
  if (n > kCoeffCap)
    fail(ErrorCode::InvalidArgument,
         "coefficient space is capped at degree " + std::to_string(kCoeffCap));
  const cd z = zeta_.at(n);
  if (n > m()) {
    const Polynomial<double> qh = qhat_poly(n);
    Polynomial<cd> q = to_complex(qh);
    q -= Polynomial<cd>(std::vector<cd>{qh(z)});
    return q;
  }
  // Below the gap the same connection sum applies with each basis member
  // pinned at zeta; the k = n term carries P_0 - P_0(zeta) = 0.
  const std::vector<double>& row = b_row(n);
  const double ln = lambda(n);
  Polynomial<cd> q;
  for (int k = 0; k <= n; ++k) {
    const double denom = (n - k == 0) ? 1.0 : lambda(n - k);
    const Polynomial<double>& p = jbasis_.poly(n - k);
    Polynomial<cd> term = to_complex(p);
    term -= Polynomial<cd>(std::vector<cd>{p(z)});
    q += (ln * row[static_cast<std::size_t>(k)] / denom) * term;
  }
  return q;
}

Scaled3 QFamily::qhat_values(int n, std::complex<double> z) {
  if (n <= m())
    fail(ErrorCode::InvalidArgument, "qhat values are defined for n > m");
  if (n > nmax_mu_)
    fail(ErrorCode::InvalidArgument, "qhat values: n out of range");
  const ScaledTail t = eval_monic_tail(z, n, m() + 1, jac_rec_);
  const std::vector<double> g = gammas(n);
  Scaled3 out;
  out.exponent = t.exponent;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& v = t.at(n - static_cast<int>(k));
    for (int d = 0; d < 3; ++d) out.v[static_cast<std::size_t>(d)] += g[k] * v[static_cast<std::size_t>(d)];
  }
  return out;
}

std::array<double, 3> QFamily::qhat_values_real(int n, double x, double* exponent) {
  const ScaledTailReal t = eval_monic_tail(x, n, m() + 1, jac_rec_);
  const std::vector<double> g = gammas(n);
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& v = t.at(n - static_cast<int>(k));
    for (int d = 0; d < 3; ++d) out[static_cast<std::size_t>(d)] += g[k] * v[static_cast<std::size_t>(d)];
  }
  *exponent = t.exponent;
  return out;
}

Scaled3 QFamily::L_values(int n, std::complex<double> z) {
  if (n < 0 || n > nmax_mu_)
    fail(ErrorCode::InvalidArgument, "L values: n out of range");
  const ScaledTail t = eval_monic_tail(z, n, 1, mu_.recurrence());
  Scaled3 out;
  out.exponent = t.exponent;
  out.v = t.at(n);
  return out;
}

Scaled3 QFamily::p_values(int n, std::complex<double> z) {
  if (n < 0 || n > nmax_mu_)
    fail(ErrorCode::InvalidArgument, "P values: n out of range");
  const ScaledTail t = eval_monic_tail(z, n, 1, jac_rec_);
  Scaled3 out;
  out.exponent = t.exponent;
  out.v = t.at(n);
  return out;
}

ScaledValue QFamily::q_value(int n, std::complex<double> z) {
  if (n == 0) return {cd(1.0, 0.0), 0.0};
  if (n <= m()) return {q_poly(n)(z), 0.0};
  const Scaled3 qh = qhat_values(n, z);
  auto it = qhat_at_zeta_.find(n);
  if (it == qhat_at_zeta_.end())
    it = qhat_at_zeta_.emplace(n, qhat_values(n, zeta_.at(n))).first;
  const Scaled3& zv = it->second;
  // Q_n(z) = Qhat_n(z) - Qhat_n(zeta_n), combined under the larger exponent
  // so only decaying exponentials appear.
  const double E = std::max(qh.exponent, zv.exponent);
  const cd v = qh.v[0] * std::exp(qh.exponent - E) -
               zv.v[0] * std::exp(zv.exponent - E);
  return {v, E};
}

std::complex<double> QFamily::q_newton_ratio(int n, std::complex<double> z) {
  if (n <= m())
    fail(ErrorCode::InvalidArgument, "newton ratio is defined for n > m");
  const Scaled3 qh = qhat_values(n, z);
  auto it = qhat_at_zeta_.find(n);
  if (it == qhat_at_zeta_.end())
    it = qhat_at_zeta_.emplace(n, qhat_values(n, zeta_.at(n))).first;
  const Scaled3& zv = it->second;
  const double E = std::max(qh.exponent, zv.exponent);
  const double sq = std::exp(qh.exponent - E);
  const cd num = qh.v[0] * sq - zv.v[0] * std::exp(zv.exponent - E);
  const cd den = qh.v[1] * sq;
  return num / den;
}

std::vector<double> QFamily::qhat_real_zeros(int n) {
  auto f = [this, n](double x) {
    double e;
    return qhat_values_real(n, x, &e)[0];
  };
  auto df = [this, n](double x) {
    double e;
    return qhat_values_real(n, x, &e)[1];
  };
  return real_zeros(f, df, n);
}

std::vector<double> QFamily::qhat_deriv_real_zeros(int n) {
  auto f = [this, n](double x) {
    double e;
    return qhat_values_real(n, x, &e)[1];
  };
  auto df = [this, n](double x) {
    double e;
    return qhat_values_real(n, x, &e)[2];
  };
  return real_zeros(f, df, n - 1);
}

std::vector<double> QFamily::L_real_zeros(int n) {
  const Recurrence& rec = mu_.recurrence();
  auto f = [&rec, n](double x) { return eval_monic_tail(x, n, 1, rec).at(n)[0]; };
  auto df = [&rec, n](double x) { return eval_monic_tail(x, n, 1, rec).at(n)[1]; };
  std::vector<double> zs = real_zeros(f, df, n);
  if (static_cast<int>(zs.size()) != n)
    fail(ErrorCode::NonConvergence,
         "real zero scan of L_" + std::to_string(n) + " found " +
             std::to_string(zs.size()) + " of " + std::to_string(n));
  return zs;
}

double QFamily::ode_residual(int n) {
  require_range(n, m() + 1, "ode residual");
  if (n > kCoeffCap)
    fail(ErrorCode::InvalidArgument,
         "ode residual lives in coefficient space (n <= " +
             std::to_string(kCoeffCap) + ")");
  const Polynomial<cd> q = q_poly(n);
  const Polynomial<cd> lhs = apply_operator(q, params());
  Polynomial<cd> target = to_complex(mu_.poly(n));
  target *= cd(lambda(n), 0.0);
  return coeff_distance(lhs, target) / max_abs_coeff(target);
}

double QFamily::orthogonality_residual(int n) {
  require_range(n, m() + 1, "orthogonality residual");
  const int ncomp = n;  // test monomials x^k, k = 0..n-1

  // Even mu-moments first; they set the scale of each component.
  std::vector<double> moments = integrate_mu_vec(
      meas_, cache_,
      [&](const QuadRule& rule, const std::vector<double>& mw,
          std::vector<double>& out) {
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          const double x2 = rule.x[i] * rule.x[i];
          double p = 1.0;
          for (int k = 0; k < ncomp; ++k) {
            out[static_cast<std::size_t>(k)] += mw[i] * p;
            p *= x2;
          }
        }
      },
      ncomp, n + 16, 1e-12, std::vector<double>(static_cast<std::size_t>(ncomp), 0.0));

  const double a = params().alpha, b = params().beta;
  std::vector<double> floors(static_cast<std::size_t>(ncomp));
  const double lam = std::abs(lambda(n));
  for (int k = 0; k < ncomp; ++k)
    floors[static_cast<std::size_t>(k)] =
        lam * std::sqrt(mu_.l(n) * moments[static_cast<std::size_t>(k)]);

  // <L[Q_n], x^k>_mu assembled from value-space derivatives; the constant
  // shift in Q_n is killed by the operator, so Qhat values suffice.
  std::vector<double> integrals = integrate_mu_vec(
      meas_, cache_,
      [&](const QuadRule& rule, const std::vector<double>& mw,
          std::vector<double>& out) {
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          const double x = rule.x[i];
          double e;
          const std::array<double, 3> v = qhat_values_real(n, x, &e);
          const double op =
              ((1.0 - x * x) * v[2] + (b - a - (a + b + 2.0) * x) * v[1]) *
              std::exp(e);
          double p = 1.0;
          for (int k = 0; k < ncomp; ++k) {
            out[static_cast<std::size_t>(k)] += mw[i] * op * p;
            p *= x;
          }
        }
      },
      ncomp, n + 16, 1e-12, floors);

  double worst = 0.0;
  for (int k = 0; k < ncomp; ++k)
    worst = std::max(worst, std::abs(integrals[static_cast<std::size_t>(k)]) /
                                floors[static_cast<std::size_t>(k)]);
  return worst;
}

double QFamily::tail_residual(int n) {
  require_range(n, 1, "tail residual");
  if (n <= m()) return 0.0;
  const QuadRule& rule = cache_.rule(n + 1);
  const double log_ln = mu_.log_l(n);
  std::vector<double> s(static_cast<std::size_t>(n - m()), 0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const ScaledTailReal lt = eval_monic_tail(rule.x[i], n, 1, mu_.recurrence());
    const ScaledTailReal pt = eval_monic_tail(rule.x[i], n, n + 1, jac_rec_);
    const double lv = lt.at(n)[0];
    for (int k = m() + 1; k <= n; ++k) {
      // |<L_n, P_{n-k}>| / sqrt(tau_{n-k} l_n), accumulated pre-normalized.
      const double factor =
          std::exp(lt.exponent + pt.exponent -
                   0.5 * log_taus_[static_cast<std::size_t>(n - k)] - 0.5 * log_ln);
      s[static_cast<std::size_t>(k - m() - 1)] +=
          rule.w[i] * lv * pt.at(n - k)[0] * factor;
    }
  }
  double worst = 0.0;
  for (double v : s) worst = std::max(worst, std::abs(v));
  return worst;
}

ExistenceResult QFamily::existence_check(int n) {
  require_range(n, 1, "existence check");
  const QuadRule& rule = cache_.rule(n / 2 + 1);
  double res = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const ScaledTailReal lt = eval_monic_tail(rule.x[i], n, 1, mu_.recurrence());
    res += rule.w[i] * lt.at(n)[0] * std::exp(lt.exponent);
  }
  ExistenceResult out;
  out.residual = res;
  out.threshold = 1e-9 * std::exp(0.5 * (log_taus_[0] + mu_.log_l(n)));
  out.exists = std::abs(res) <= out.threshold;
  return out;
}

double QFamily::low_moment_residual(int n) {
  require_range(n, m() + 1, "low moment residual");
  const int kmax = n - m() - 1;
  if (kmax < 0) return 0.0;
  const std::vector<double> g = gammas(n);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    norm2 += g[k] * g[k] * taus_[static_cast<std::size_t>(n) - k];
  const double norm = std::sqrt(norm2);

  const std::vector<double> mom = jacobi_moments(2 * kmax, params());
  const QuadRule& rule = cache_.rule(n + 1);
  std::vector<double> s(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    double e;
    const std::array<double, 3> v = qhat_values_real(n, rule.x[i], &e);
    const double qv = v[0] * std::exp(e);
    double p = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      s[static_cast<std::size_t>(k)] += rule.w[i] * qv * p;
      p *= rule.x[i];
    }
  }
  double worst = 0.0;
  for (int k = 0; k <= kmax; ++k)
    worst = std::max(worst,
                     std::abs(s[static_cast<std::size_t>(k)]) /
                         (norm * std::sqrt(mom[static_cast<std::size_t>(2 * k)])));
  return worst;
}

double QFamily::rho_expansion_residual(int n) {
  require_range(n, m() + 1, "rho expansion residual");
  if (n + m() > jbasis_.nmax() || n + m() > kCoeffCap)
    fail(ErrorCode::InvalidArgument,
         "rho expansion lives in coefficient space (n + m <= " +
             std::to_string(kCoeffCap) + ")");
  const Polynomial<double> lhs = meas_.rho() * jbasis_.poly(n);
  Polynomial<double> rhs;
  for (int k = 0; k <= m(); ++k) {
    const double coef =
        b_row(n + k)[static_cast<std::size_t>(k)] *
        std::exp(log_taus_[static_cast<std::size_t>(n)] - mu_.log_l(n + k));
    rhs += coef * mu_.poly(n + k);
  }
  return coeff_distance(lhs, rhs) / max_abs_coeff(lhs);
}

double QFamily::ctilde(int n, int k) {
  // Coefficient of P_{n-k} in (1-z^2) Qhat_n'(z); zero outside |k|-window.
  const int j1 = std::max(0, k - 1);
  const int j2 = std::min(m(), k + 1);
  if (j1 > j2) return 0.0;
  const std::vector<double>& row = b_row(n);
  const double ln = lambda(n);
  double s = 0.0;
  for (int j = j1; j <= j2; ++j) {
    if (n - j < 1) continue;  // P_0' contributes nothing
    if (j >= static_cast<int>(row.size())) continue;
    const StructureCoeffs sc = structure_coeffs(n - j, params());
    const int shift = j - k;  // P_{(n-j)+shift} = P_{n-k}
    const double cc = (shift == 1) ? sc.c1 : (shift == 0 ? sc.c0 : sc.cm1);
    s += (ln * row[static_cast<std::size_t>(j)] / lambda(n - j)) * cc;
  }
  return s;
}

double QFamily::d_coeff(int nu, int kappa) {
  // d_{nu,nu-kappa}: coefficient of L_{nu-kappa} in (1-z^2) rho Qhat_nu'.
  const int j1 = std::max(-1, kappa);
  const int j2 = std::min(m() + 1, m() + kappa);
  if (j1 > j2) return 0.0;
  const std::vector<double>& row = b_row(nu - kappa);
  double s = 0.0;
  for (int j = j1; j <= j2; ++j) {
    if (nu - j < 0) continue;
    const int idx = j - kappa;  // b_{nu-kappa, (nu-kappa)-idx}
    if (idx >= static_cast<int>(row.size())) continue;
    s += taus_[static_cast<std::size_t>(nu - j)] * ctilde(nu, j) *
         row[static_cast<std::size_t>(idx)];
  }
  return s / mu_.l(nu - kappa);
}

Polynomial<double> QFamily::default_primitive() const {
  return meas_.rho().antiderivative();
}

ThetaTable QFamily::theta_coeffs(int n, const Polynomial<double>& R) {
  if (n <= 2 * m() + 1)
    fail(ErrorCode::InvalidArgument,
         "theta coefficients require n > 2m+1, got n = " + std::to_string(n));
  require_range(n, 2 * m() + 2, "theta coefficients");
  const Polynomial<double> dR = R.derivative();
  if (coeff_distance(dR, meas_.rho()) >
      1e-12 * std::max(1.0, max_abs_coeff(meas_.rho())))
    fail(ErrorCode::PrimitiveMismatch,
         "R' does not match rho coefficient-wise");

  const int mm = m();
  const int w = 2 * mm + 3;  // k = -(m+1)..(m+1)
  ThetaTable t;
  t.n = n;
  t.R = R;
  t.ctilde.resize(static_cast<std::size_t>(mm) + 3);
  for (int k = -1; k <= mm + 1; ++k)
    t.ctilde[static_cast<std::size_t>(k + 1)] = ctilde(n, k);
  t.d.resize(static_cast<std::size_t>(w));
  for (int k = -(mm + 1); k <= mm + 1; ++k)
    t.d[static_cast<std::size_t>(k + mm + 1)] = d_coeff(n, k);

  // e_{R,n,n-k} = <R L_n, L_{n-k}>_mu / l_{n-k}, accumulated with the
  // 1/l_{n-k} normalization folded into the exponent so large n cannot
  // underflow the components.
  const double rmax = std::max(1.0, coeff_sum(R));
  std::vector<double> floors(static_cast<std::size_t>(w));
  for (int k = -(mm + 1); k <= mm + 1; ++k)
    floors[static_cast<std::size_t>(k + mm + 1)] =
        rmax * std::exp(0.5 * (mu_.log_l(n) - mu_.log_l(n - k)));
  const Recurrence& mrec = mu_.recurrence();
  std::vector<double> e = integrate_mu_vec(
      meas_, cache_,
      [&](const QuadRule& rule, const std::vector<double>& mw,
          std::vector<double>& out) {
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          const double x = rule.x[i];
          const ScaledTailReal lt = eval_monic_tail(x, n + mm + 1, w, mrec);
          const double rx = R(x);
          const double vn = lt.at(n)[0];
          for (int k = -(mm + 1); k <= mm + 1; ++k) {
            const double factor =
                std::exp(2.0 * lt.exponent - mu_.log_l(n - k));
            out[static_cast<std::size_t>(k + mm + 1)] +=
                mw[i] * rx * vn * lt.at(n - k)[0] * factor;
          }
        }
      },
      w, n + mm + 16, 1e-12, floors);
  t.e = e;

  t.theta.resize(static_cast<std::size_t>(w));
  const double ln = lambda(n);
  for (int k = -(mm + 1); k <= mm + 1; ++k) {
    const std::size_t i = static_cast<std::size_t>(k + mm + 1);
    t.theta[i] = (ln * t.e[i] + t.d[i]) / lambda(n - k);
  }
  return t;
}

double QFamily::recurrence_residual(int n, const ThetaTable& table) {
  if (table.n != n)
    fail(ErrorCode::InvalidArgument, "theta table belongs to a different n");
  if (n + m() + 1 > kCoeffCap)
    fail(ErrorCode::InvalidArgument,
         "recurrence residual lives in coefficient space (n + m + 1 <= " +
             std::to_string(kCoeffCap) + ")");
  const int mm = m();
  const Polynomial<double> lhs = table.R * qhat_poly(n).derivative();
  Polynomial<double> rhs;
  for (int k = -(mm + 1); k <= mm + 1; ++k)
    rhs += table.theta[static_cast<std::size_t>(k + mm + 1)] *
           qhat_poly(n - k).derivative();
  return coeff_distance(lhs, rhs) / max_abs_coeff(lhs);
}

StructureReport QFamily::structure_identity_check(int n) {
  require_range(n, m() + 2, "structure identity check");
  const int mm = m();
  const int jmax = n + mm + 1;
  const QuadRule& rule = cache_.rule(jmax + 1);
  const double log_ln = mu_.log_l(n);
  const Recurrence& mrec = mu_.recurrence();

  // G_j = <(1-x^2) Qhat_n', L_j>_{alpha,beta} / sqrt(l_j l_n); the identity
  // says G_j sqrt(l_n / l_j) matches d_{n,n-k} on the window and vanishes off
  // it.
  std::vector<double> G(static_cast<std::size_t>(jmax) + 1, 0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double x = rule.x[i];
    double eq;
    const std::array<double, 3> qv = qhat_values_real(n, x, &eq);
    const ScaledTailReal lt = eval_monic_tail(x, jmax, jmax + 1, mrec);
    const double base = rule.w[i] * (1.0 - x * x) * qv[1];
    for (int j = 0; j <= jmax; ++j) {
      const double factor =
          std::exp(eq + lt.exponent - 0.5 * mu_.log_l(j) - 0.5 * log_ln);
      G[static_cast<std::size_t>(j)] += base * lt.at(j)[0] * factor;
    }
  }
  double total2 = 0.0;
  for (double gj : G) total2 += gj * gj;
  const double total = std::sqrt(total2);

  StructureReport rep;
  for (int j = 0; j < n - mm - 1; ++j)
    rep.outside_residual =
        std::max(rep.outside_residual, std::abs(G[static_cast<std::size_t>(j)]) / total);
  for (int k = -(mm + 1); k <= mm + 1; ++k) {
    const int j = n - k;
    if (j < 0 || j > jmax) continue;
    const double scale = std::exp(0.5 * (mu_.log_l(j) - log_ln));
    const double da = d_coeff(n, k) * scale;
    // Index misreading of the same identity: d_{n-k,k} in place of d_{n,n-k}.
    const double db = d_coeff(n - k, n - 2 * k) * scale;
    const double gj = G[static_cast<std::size_t>(j)];
    rep.mismatch_a = std::max(rep.mismatch_a, std::abs(da - gj) / total);
    rep.mismatch_b = std::max(rep.mismatch_b, std::abs(db - gj) / total);
  }
  return rep;
}

void QFamily::corrupt_b(int n, int k, double delta) {
  const std::vector<double>& row = b_row(n);
  if (k < 0 || k >= static_cast<int>(row.size()))
    fail(ErrorCode::InvalidArgument, "corrupt_b index out of range");
  b_rows_[n][static_cast<std::size_t>(k)] += delta;
  qhat_at_zeta_.erase(n);
}

}  // namespace qortho
