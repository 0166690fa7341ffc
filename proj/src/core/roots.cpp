#include "core/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace qortho {

namespace {

using cd = std::complex<double>;

// p(z) and p'(z) by joint Horner.
std::pair<cd, cd> horner2(const std::vector<cd>& c, cd z) {
  cd p = 0.0, dp = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

bool lex_less(const cd& a, const cd& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<cd> initial_ring(int d, cd center, double radius, unsigned seed) {
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  const double phase0 = 2.0 * std::numbers::pi * jitter(rng);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<cd> z(d);
  for (int i = 0; i < d; ++i) {
    // Golden-angle phases avoid the symmetric stalls of equispaced starts;
    // radii are spread so no two guesses coincide.
    const double th = phase0 + golden * i;
    const double r = radius * (0.55 + 0.45 * (i + 0.5) / d);
    z[i] = center + cd(r * std::cos(th), r * std::sin(th));
  }
  return z;
}

// Shared Aberth sweep loop. newton(z) must return p(z)/p'(z). A root is
// frozen once its own relative step falls under tol (or stable_root says its
// residual is at the backward-stable floor); frozen roots still repel active
// ones. Freezing breaks the last-bit limit cycles a global step criterion
// never escapes.
RootResult aberth(const std::function<cd(cd)>& newton, int d, cd center,
                  double radius, unsigned seed, int max_sweeps, double tol,
                  const std::function<bool(cd)>& stable_root = nullptr) {
  RootResult out;
  if (d <= 0) {
    out.converged = true;
    return out;
  }
  std::vector<cd> z = initial_ring(d, center, radius, seed);
  std::vector<char> settled(static_cast<std::size_t>(d), 0);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    int active = 0;
    for (int i = 0; i < d; ++i) {
      if (settled[i]) continue;
      cd N = newton(z[i]);
      if (!std::isfinite(N.real()) || !std::isfinite(N.imag())) {
        // p' vanished (or scaling blew up) at this guess: nudge and retry later.
        z[i] += cd(1e-6 * (1.0 + std::abs(z[i])), 1e-6);
        ++active;
        continue;
      }
      cd S = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        cd diff = z[i] - z[j];
        if (diff == cd(0.0)) diff = cd(1e-14, 1e-14);
        S += 1.0 / diff;
      }
      cd denom = 1.0 - N * S;
      cd w = (denom == cd(0.0)) ? N : N / denom;
      z[i] -= w;
      const double rel = std::abs(w) / (1.0 + std::abs(z[i]));
      if (rel < tol || (stable_root && rel < 1e5 * tol && stable_root(z[i])))
        settled[i] = 1;
      else
        ++active;
    }
    out.sweeps = sweep;
    if (active == 0) {
      out.converged = true;
      break;
    }
  }
  std::sort(z.begin(), z.end(), lex_less);
  out.roots = std::move(z);
  return out;
}

RootResult find_roots_impl(std::vector<cd> c, unsigned seed) {
  RootResult out;
  while (!c.empty() && c.back() == cd(0.0)) c.pop_back();
  const int d = static_cast<int>(c.size()) - 1;
  if (d <= 0) {
    out.converged = true;
    return out;
  }
  if (d == 1) {
    out.roots = {-c[0] / c[1]};
    out.converged = true;
    return out;
  }

  double ratio_max = 0.0, coeff_max = 0.0;
  for (int k = 0; k <= d; ++k) {
    coeff_max = std::max(coeff_max, std::abs(c[k]));
    if (k < d) ratio_max = std::max(ratio_max, std::abs(c[k] / c[d]));
  }
  const double radius = 1.0 + ratio_max;
  const cd centroid = -c[d - 1] / (static_cast<double>(d) * c[d]);

  auto newton = [&c](cd z) {
    auto [p, dp] = horner2(c, z);
    if (p == cd(0.0)) return cd(0.0);
    return p / dp;
  };
  // |p(z)| below the evaluation error bound of the coefficient data means z
  // is an exact root of a relatively perturbed polynomial: settled.
  auto stable_root = [&c](cd z) {
    const double az = std::abs(z);
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * az + std::abs(c[k]);
    const auto [p, dp] = horner2(c, z);
    (void)dp;
    return std::abs(p) <=
           16.0 * std::numeric_limits<double>::epsilon() * std::max(s, 1e-300);
  };
  out = aberth(newton, d, centroid, radius, seed, 500, 1e-13, stable_root);

  // Newton polish; flag roots where |p'| is tiny relative to the local scale.
  for (cd& r : out.roots) {
    for (int it = 0; it < 3; ++it) {
      auto [p, dp] = horner2(c, r);
      const double scale =
          coeff_max * std::pow(1.0 + std::abs(r), static_cast<double>(d - 1));
      if (std::abs(dp) < 1e-12 * scale) {
        out.suspect = true;
        break;
      }
      if (p == cd(0.0)) break;
      r -= p / dp;
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), lex_less);

  double res = 0.0;
  for (const cd& r : out.roots) {
    auto [p, dp] = horner2(c, r);
    (void)dp;
    res = std::max(res, std::abs(p) / (coeff_max * std::pow(std::max(1.0, std::abs(r)),
                                                            static_cast<double>(d))));
  }
  out.residual = res;
  return out;
}

}  // namespace

RootResult find_roots(const Polynomial<cd>& p, unsigned seed) {
  return find_roots_impl(p.coeffs(), seed);
}

RootResult find_roots(const Polynomial<double>& p, unsigned seed) {
  std::vector<cd> c(p.coeffs().begin(), p.coeffs().end());
  return find_roots_impl(std::move(c), seed);
}

RootResult find_roots(const std::function<cd(cd)>& newton_ratio,
                      const FunctorOptions& opt) {
  return aberth(newton_ratio, opt.degree, opt.center, opt.radius, opt.seed,
                opt.max_sweeps, opt.tol);
}

std::vector<double> real_zeros(const std::function<double(double)>& f,
                               const std::function<double(double)>& df,
                               int expected_count, double a, double b) {
  const int grid = std::max(1024, 16 * std::max(expected_count, 1));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<double> xs(grid + 1), fs(grid + 1);
  for (int j = 0; j <= grid; ++j) {
    const double t = static_cast<double>(j) / grid;
    xs[j] = mid + half * std::cos(std::numbers::pi * (1.0 - t));
    fs[j] = f(xs[j]);
  }

  std::vector<double> zeros;
  for (int j = 0; j < grid; ++j) {
    if (fs[j] == 0.0) {
      if (j > 0) zeros.push_back(xs[j]);  // endpoint zeros are out of scope
      continue;
    }
    if (fs[j] * fs[j + 1] >= 0.0) continue;
    double lo = xs[j], hi = xs[j + 1], flo = fs[j];
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, std::abs(lo));
         ++it) {
      const double m = 0.5 * (lo + hi);
      const double fm = f(m);
      if (fm == 0.0) {
        lo = hi = m;
        break;
      }
      if (flo * fm < 0.0)
        hi = m;
      else {
        lo = m;
        flo = fm;
      }
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
      const double d = df(r);
      if (d == 0.0) break;
      const double step = f(r) / d;
      const double cand = r - step;
      if (cand <= xs[j] || cand >= xs[j + 1]) break;  // keep inside the bracket
      r = cand;
    }
    zeros.push_back(r);
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

}  // namespace qortho
