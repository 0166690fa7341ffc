#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"

namespace qortho {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

std::vector<CheckResult> run_verify(QFamily& fam, const VerifyOptions& opt) {
  const int m = fam.m();
  const int nmax = (opt.n_max > 0) ? std::min(opt.n_max, fam.nmax()) : fam.nmax();
  std::vector<CheckResult> out;

  {
    CheckResult c;
    c.name = "ode";
    c.tolerance = opt.tol_ode;
    const int hi = std::min({nmax, 30, kCoeffCap});
    c.applicable = hi >= m + 1;
    if (c.applicable) {
      int at = 0;
      for (int n = m + 1; n <= hi; ++n) {
        const double r = fam.ode_residual(n);
        if (r > c.worst) { c.worst = r; at = n; }
      }
      c.pass = c.worst <= c.tolerance;
      c.detail = "max over n = " + std::to_string(m + 1) + ".." +
                 std::to_string(hi) + " at n = " + std::to_string(at);
    }
    out.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "orthogonality";
    c.tolerance = opt.tol_orthogonality;
    const int hi = std::min(nmax, 25);
    c.applicable = hi >= m + 1;
    if (c.applicable) {
      for (int n = m + 1; n <= hi; ++n)
        c.worst = std::max(c.worst, fam.orthogonality_residual(n));
      c.pass = c.worst <= c.tolerance;
      c.detail = "moments x^k, k < n, for n <= " + std::to_string(hi);
    }
    out.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "b-tail";
    c.tolerance = opt.tol_tail;
    const int hi = std::min(nmax, 30);
    c.applicable = hi >= 1;
    if (c.applicable) {
      for (int n = 1; n <= hi; ++n)
        c.worst = std::max(c.worst, fam.tail_residual(n));
      c.pass = c.worst <= c.tolerance;
      c.detail = "normalized projections below index n-m, n <= " + std::to_string(hi);
    }
    out.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "existence-flip";
    const int hi = std::min(nmax, 30);
    c.applicable = hi >= std::max(1, m);
    if (c.applicable) {
      bool ok = true;
      std::string flips;
      if (m >= 1) {
        const ExistenceResult at_m = fam.existence_check(m);
        ok = !at_m.exists;
        flips = "n = m: residual " + fmt(at_m.residual) + " vs threshold " +
                fmt(at_m.threshold);
        c.worst = std::abs(at_m.residual);
        c.tolerance = at_m.threshold;
      }
      for (int n = m + 1; n <= hi; ++n)
        if (!fam.existence_check(n).exists) {
          ok = false;
          flips += (flips.empty() ? "" : "; ") + std::string("missing at n = ") +
                   std::to_string(n);
        }
      c.pass = ok;
      c.detail = m >= 1 ? "expected: fails at n = m, holds above; " + flips
                        : "m = 0: holds at every n";
    }
    out.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "recurrence";
    c.tolerance = (m == 0) ? opt.tol_recurrence_exact : opt.tol_recurrence;
    const int lo = 2 * m + 2;
    // The window at level n references rows up to n + m + 1.
    const int hi = std::min({nmax - m - 1, 25, kCoeffCap - m - 1});
    c.applicable = hi >= lo;
    if (c.applicable) {
      const Polynomial<double> R = fam.default_primitive();
      for (int n = lo; n <= hi; ++n) {
        const ThetaTable t = fam.theta_coeffs(n, R);
        c.worst = std::max(c.worst, fam.recurrence_residual(n, t));
      }
      c.pass = c.worst <= c.tolerance;
      c.detail = "R Q' vs the 2m+3 window, n = " + std::to_string(lo) + ".." +
                 std::to_string(hi);
    }
    out.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "structure-window";
    c.tolerance = opt.tol_window;
    const int lo = m + 2;
    const int hi = std::min(nmax, 25);
    c.applicable = hi >= lo;
    if (c.applicable) {
      double worst_a = 0.0, worst_b_floor = std::numeric_limits<double>::infinity();
      for (int n = lo; n <= hi; ++n) {
        const StructureReport r = fam.structure_identity_check(n);
        c.worst = std::max({c.worst, r.outside_residual, r.mismatch_a});
        worst_a = std::max(worst_a, r.mismatch_a);
        worst_b_floor = std::min(worst_b_floor, r.mismatch_b);
      }
      c.pass = c.worst <= c.tolerance;
      c.detail = "outside mass + window match; index misreading floor " +
                 fmt(worst_b_floor) + " (expected O(1) for n > 3m+3)";
    }
    out.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "interlacing";
    const int hi = std::min(nmax, 40);
    c.applicable = opt.interlacing && m <= 1 && hi >= 2;
    if (!opt.interlacing || m > 1)
      c.detail = m > 1 ? "stated for m <= 1; run the asymptotics report for m >= 2"
                       : "disabled";
    if (c.applicable) {
      bool ok = true;
      double minsep = std::numeric_limits<double>::infinity();
      std::string msg;
      for (int n = 2; n <= hi; ++n) {
        try {
          const InterlacingReport r = interlacing_check(fam, n);
          ok = ok && r.interlaced;
          minsep = std::min(minsep, r.min_separation);
          if (!r.interlaced && msg.empty())
            msg = "violated at n = " + std::to_string(n);
        } catch (const Error& e) {
          ok = false;
          if (msg.empty())
            msg = "n = " + std::to_string(n) + ": " + e.what();
        }
      }
      c.pass = ok;
      c.worst = minsep;  // smallest separation margin seen
      c.detail = ok ? "strict for n = 2.." + std::to_string(hi) +
                          "; min separation " + fmt(minsep)
                    : msg;
    }
    out.push_back(std::move(c));
  }

  return out;
}

}  // namespace qortho
