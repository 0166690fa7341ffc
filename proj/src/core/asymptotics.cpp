#include "core/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"
#include "core/roots.hpp"

namespace qortho {
namespace {

using cd = std::complex<double>;

bool on_cut(cd z) { return z.imag() == 0.0 && std::abs(z.real()) <= 1.0; }

}  // namespace

std::complex<double> phi_map(std::complex<double> z) {
  return z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
}

double dist_to_interval(std::complex<double> z) {
  if (std::abs(z.real()) <= 1.0) return std::abs(z.imag());
  return std::hypot(std::abs(z.real()) - 1.0, z.imag());
}

Geometry geometry(std::complex<double> zeta) {
  Geometry g;
  g.zeta = zeta;
  g.eta = std::log(std::abs(phi_map(zeta)));
  g.delta = dist_to_interval(zeta);
  g.Delta = std::max(std::abs(zeta - 1.0), std::abs(zeta + 1.0));
  return g;
}

std::vector<std::complex<double>> ellipse_points(std::complex<double> zeta,
                                                 int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "ellipse needs count >= 1");
  const double eta = std::log(std::abs(phi_map(zeta)));
  if (eta <= 1e-13)
    fail(ErrorCode::OnInterval,
         "zeta lies on [-1,1]; the ellipse degenerates to the segment");
  std::vector<cd> pts(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double th = 2.0 * std::numbers::pi * j / count;
    pts[static_cast<std::size_t>(j)] =
        cd(std::cosh(eta) * std::cos(th), std::sinh(eta) * std::sin(th));
    const double lev = std::log(std::abs(phi_map(pts[static_cast<std::size_t>(j)])));
    if (std::abs(lev - eta) > 1e-10)
      fail(ErrorCode::NonConvergence, "ellipse point left the level set");
  }
  return pts;
}

std::complex<double> szego_Phi(const Measure& meas, std::complex<double> z) {
  if (on_cut(z))
    fail(ErrorCode::BranchCut, "Phi(rho, z) is not defined on [-1,1]");
  const cd u = 1.0 / phi_map(z);
  cd prod(1.0, 0.0);
  for (cd nu : meas.spec().rho_roots) prod *= 1.0 - u / phi_map(nu);
  return std::ldexp(1.0, -meas.m()) * prod;
}

double phi_m_constant(const Measure& meas) {
  const Polynomial<double>& rho = meas.rho();
  double prev = 0.0;
  for (int nn = 32; nn <= (1 << 20); nn *= 2) {
    double s = 0.0;
    for (int i = 1; i <= nn; ++i) {
      const double x = std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * nn));
      s += std::log(std::abs(rho(x)));
    }
    const double cur = s / (2.0 * nn);  // (1/2pi) * (pi/N) * sum
    if (nn > 32 && std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur)))
      return std::ldexp(std::exp(cur), meas.m());
    prev = cur;
  }
  fail(ErrorCode::NonConvergence, "phi_m quadrature did not settle");
}

std::complex<double> exterior_ratio_limit(const Measure& meas,
                                          std::complex<double> z) {
  return std::ldexp(1.0, meas.m()) * szego_Phi(meas, z);
}

std::complex<double> interior_ratio_limit(const Measure& meas,
                                          std::complex<double> zeta) {
  return -std::ldexp(1.0, meas.m()) * szego_Phi(meas, zeta);
}

std::vector<RatioRow> ratio_diagnostic(QFamily& fam, const std::vector<int>& ns,
                                       std::complex<double> z) {
  if (on_cut(z))
    fail(ErrorCode::BranchCut, "ratio diagnostics need z off [-1,1]");
  const cd text = exterior_ratio_limit(fam.measure(), z);
  const double abs_phi_z = std::abs(phi_map(z));
  std::vector<RatioRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    if (n <= fam.m())
      fail(ErrorCode::InvalidArgument, "ratio diagnostics need n > m");
    RatioRow r;
    r.n = n;
    const cd zeta = fam.zeta(n);
    const double abs_phi_zeta = std::abs(phi_map(zeta));
    r.target_exterior = text;
    r.target_interior = interior_ratio_limit(fam.measure(), zeta);
    r.exterior_applicable = abs_phi_z > abs_phi_zeta;
    r.interior_applicable =
        abs_phi_z < abs_phi_zeta && dist_to_interval(z) > 1e-6;

    const Scaled3 qh = fam.qhat_values(n, z);
    const Scaled3 pv = fam.p_values(n, z);
    const Scaled3 pz = fam.p_values(n, zeta);
    const ScaledValue qv = fam.q_value(n, z);
    r.qhat_ratio = (qh.v[0] / pv.v[0]) * std::exp(qh.exponent - pv.exponent);
    r.q_ratio = (qv.v / pv.v[0]) * std::exp(qv.exponent - pv.exponent);
    r.interior_ratio = (qv.v / pz.v[0]) * std::exp(qv.exponent - pz.exponent);
    r.err_qhat = std::abs(r.qhat_ratio - r.target_exterior);
    r.err_q = std::abs(r.q_ratio - r.target_exterior);
    r.err_interior = std::abs(r.interior_ratio - r.target_interior);
    rows.push_back(r);
  }
  return rows;
}

std::vector<NthRootRow> nth_root_diagnostic(QFamily& fam,
                                            const std::vector<int>& ns,
                                            std::complex<double> z) {
  if (on_cut(z))
    fail(ErrorCode::BranchCut, "nth-root diagnostics need z off [-1,1]");
  const double target = 0.5 * std::abs(phi_map(z));
  std::vector<NthRootRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    if (n <= fam.m())
      fail(ErrorCode::InvalidArgument, "nth-root diagnostics need n > m");
    const Scaled3 qh = fam.qhat_values(n, z);
    NthRootRow r;
    r.n = n;
    r.value = std::exp((std::log(std::abs(qh.v[0])) + qh.exponent) / n);
    r.target = target;
    r.abs_error = std::abs(r.value - r.target);
    rows.push_back(r);
  }
  return rows;
}

ZeroReport zero_accumulation_report(QFamily& fam, int n, double band,
                                    unsigned seed) {
  if (n <= fam.m())
    fail(ErrorCode::InvalidArgument, "zero report needs n > m");
  const Geometry g = geometry(fam.zeta(n));

  FunctorOptions opt;
  opt.degree = n;
  opt.center = cd(0.0, 0.0);
  opt.radius = g.Delta + 1.5;
  opt.seed = seed;
  const RootResult rr =
      find_roots([&fam, n](cd z) { return fam.q_newton_ratio(n, z); }, opt);

  ZeroReport rep;
  rep.n = n;
  rep.band = band;
  rep.zeros = rr.roots;
  rep.roots_converged = rr.converged;
  rep.radius_bound = g.Delta + 1.0;
  rep.cls.resize(rr.roots.size());
  for (std::size_t i = 0; i < rr.roots.size(); ++i) {
    const cd z = rr.roots[i];
    rep.max_abs = std::max(rep.max_abs, std::abs(z));
    const double d_seg = dist_to_interval(z);
    const double d_conf = std::abs(std::log(std::abs(phi_map(z))) - g.eta);
    if (d_seg <= band) {
      rep.cls[i] = ZeroClass::NearInterval;
      ++rep.count_interval;
    } else if (d_conf <= band) {
      rep.cls[i] = ZeroClass::NearEllipse;
      ++rep.count_ellipse;
    } else {
      rep.cls[i] = ZeroClass::Stray;
      ++rep.count_stray;
      rep.max_stray_distance =
          std::max(rep.max_stray_distance, std::min(d_seg, d_conf));
    }
  }
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rr.roots.size(); ++i)
    for (std::size_t j = i + 1; j < rr.roots.size(); ++j)
      rep.min_gap = std::min(rep.min_gap, std::abs(rr.roots[i] - rr.roots[j]));
  if (rr.roots.size() < 2) rep.min_gap = 0.0;
  return rep;
}

double arcsine_distance(const std::vector<double>& xs) {
  std::vector<double> s;
  s.reserve(xs.size());
  for (double x : xs)
    if (x >= -1.0 && x <= 1.0) s.push_back(x);
  if (s.empty()) fail(ErrorCode::InvalidArgument, "no points in [-1,1]");
  std::sort(s.begin(), s.end());
  const double nn = static_cast<double>(s.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double F = std::acos(-s[i]) / std::numbers::pi;
    ks = std::max(ks, std::abs((static_cast<double>(i) + 1.0) / nn - F));
    ks = std::max(ks, std::abs(static_cast<double>(i) / nn - F));
  }
  return ks;
}

InterlacingReport interlacing_check(QFamily& fam, int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "interlacing needs n >= 2");
  InterlacingReport rep;
  rep.applicable = fam.m() <= 1;
  rep.critical_points = fam.qhat_deriv_real_zeros(n);
  rep.l_zeros = fam.L_real_zeros(n);
  const auto& c = rep.critical_points;
  const auto& t = rep.l_zeros;

  if (static_cast<int>(c.size()) != n - 1) {
    const std::string msg =
        "derivative zero scan accounts for " + std::to_string(c.size()) +
        " of " + std::to_string(n - 1) + " critical points";
    if (rep.applicable) fail(ErrorCode::NotApplicable, msg);
    rep.message = msg;
    return rep;
  }

  bool ok = true;
  double sep = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n - 1; ++k) {
    const double ck = c[static_cast<std::size_t>(k)];
    const double lo = t[static_cast<std::size_t>(k)];
    const double hi = t[static_cast<std::size_t>(k + 1)];
    if (!(lo < ck && ck < hi)) ok = false;
    sep = std::min({sep, ck - lo, hi - ck});
    if (ck <= -1.0 || ck >= 1.0) ok = false;
  }
  rep.interlaced = ok;
  rep.min_separation = sep;
  rep.message = ok ? "strict interlacing holds" : "interlacing violated";
  return rep;
}

}  // namespace qortho
