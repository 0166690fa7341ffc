#include <cmath>
#include <complex>
#include <vector>

#include "core/errors.hpp"
#include "core/jacobi.hpp"
#include "core/qfamily.hpp"
#include "core/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"

using qortho::Error;
using qortho::ErrorCode;
using qortho::ExistenceResult;
using qortho::JacobiBasis;
using qortho::JacobiParams;
using qortho::Measure;
using qortho::MeasureSpec;
using qortho::Polynomial;
using qortho::QFamily;
using qortho::Scaled3;
using qortho::ScaledValue;
using qortho::StructureReport;
using qortho::ThetaTable;
using qortho::ZetaSpec;
using cd = std::complex<double>;

namespace {

Measure make_measure(double alpha, double beta, double lead,
                     std::vector<cd> roots) {
  MeasureSpec s;
  s.params = JacobiParams{alpha, beta};
  s.rho_lead = lead;
  s.rho_roots = std::move(roots);
  return Measure::validate(s);
}

Measure m0() { return make_measure(0.0, 0.0, 1.0, {}); }
Measure m1() { return make_measure(0.0, 0.0, -1.0, {cd(2.0, 0.0)}); }
Measure m1b() { return make_measure(0.5, -0.25, -1.0, {cd(2.0, 0.0)}); }
Measure m2() {
  return make_measure(0.0, 0.0, -1.0, {cd(2.0, 0.0), cd(-2.0, 0.0)});
}
Measure m3() {
  return make_measure(0.0, 0.0, 1.0,
                      {cd(2.0, 0.0), cd(2.0, 0.0), cd(-2.0, 0.0)});
}

}  // namespace

TEST_CASE("trivial modification reduces to the Jacobi family") {
  QFamily fam(m0(), 25);
  JacobiBasis basis(25, JacobiParams{0.0, 0.0});
  for (int n = 1; n <= 25; ++n) {
    const Polynomial<double> qh = fam.qhat_poly(n);
    const Polynomial<double>& p = basis.poly(n);
    CHECK(qortho::coeff_distance(qh, p) <=
          1e-12 * std::max(1.0, qortho::max_abs_coeff(p)));
    // Q_n is the Jacobi polynomial pinned at zeta.
    const Polynomial<cd> q = fam.q_poly(n);
    Polynomial<cd> expect = qortho::to_complex(p);
    expect -= Polynomial<cd>(std::vector<cd>{p(fam.zeta(n))});
    CHECK(qortho::coeff_distance(q, expect) <=
          1e-12 * std::max(1.0, qortho::max_abs_coeff(expect)));
  }
}

TEST_CASE("connection rows: leading one, exact length, oracle agreement") {
  QFamily fam(m1(), 14);
  const auto abmom = oracle::alphabeta_moments(0.0, 0.0, 40);
  const auto mumom = oracle::mu_moments(0.0, 0.0, fam.measure().rho(), 40);
  const oracle::GramSchmidt gp = oracle::gram_schmidt(abmom, 14);
  const oracle::GramSchmidt gl = oracle::gram_schmidt(mumom, 14);
  for (int n = 1; n <= 12; ++n) {
    const std::vector<double>& row = fam.b_row(n);
    REQUIRE(row.size() == 2);
    CHECK(row[0] == 1.0);
    // b_{n,n-1} = <L_n, P_{n-1}>_ab / tau_{n-1}, both factors from the
    // moment-space oracle.
    const auto& Ln = gl.coeffs[static_cast<std::size_t>(n)];
    const auto& Pm = gp.coeffs[static_cast<std::size_t>(n) - 1];
    long double inner = 0.0L;
    for (std::size_t i = 0; i < Ln.size(); ++i)
      for (std::size_t j = 0; j < Pm.size(); ++j)
        inner += Ln[i] * Pm[j] * abmom[i + j];
    const double expect = static_cast<double>(
        inner / gp.norm[static_cast<std::size_t>(n) - 1]);
    CHECK(row[1] == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("the connection truncates: no mass below the window") {
  for (Measure meas : {m1(), m1b(), m2(), m3()}) {
    QFamily fam(std::move(meas), 20);
    for (int n = fam.m() + 1; n <= 20; n += 3)
      CHECK(fam.tail_residual(n) <= 1e-9);
  }
}

TEST_CASE("defining identities hold across the reference measures") {
  for (Measure meas : {m1(), m1b(), m2(), m3()}) {
    QFamily fam(std::move(meas), 20);
    for (int n = fam.m() + 1; n <= 20; ++n) {
      CHECK(fam.ode_residual(n) <= 1e-8);
      CHECK(fam.low_moment_residual(n) <= 1e-8);
    }
    for (int n = fam.m() + 1; n <= 16; n += 2)
      CHECK(fam.orthogonality_residual(n) <= 1e-8);
  }
}

TEST_CASE("existence flips exactly at the modification degree") {
  QFamily fam(m1(), 20);
  const ExistenceResult at1 = fam.existence_check(1);
  CHECK_FALSE(at1.exists);
  // <L_1, 1> under the Legendre weight in closed form: -2 (2 - 2/ln 3).
  const double closed = -2.0 * (2.0 - 2.0 / std::log(3.0));
  CHECK(at1.residual == doctest::Approx(closed).epsilon(1e-9));
  for (int n = 2; n <= 20; ++n) CHECK(fam.existence_check(n).exists);

  QFamily fam2(m2(), 12);
  CHECK_FALSE(fam2.existence_check(2).exists);
  for (int n = 3; n <= 12; ++n) CHECK(fam2.existence_check(n).exists);

  QFamily fam0(m0(), 10);
  for (int n = 1; n <= 10; ++n) CHECK(fam0.existence_check(n).exists);
}

TEST_CASE("oracle equivalence: coefficient construction vs operator solve") {
  struct Case {
    Measure meas;
    double alpha, beta;
  };
  std::vector<Case> cases;
  cases.push_back({m1(), 0.0, 0.0});
  cases.push_back({m1b(), 0.5, -0.25});
  cases.push_back({m2(), 0.0, 0.0});
  cases.push_back({m3(), 0.0, 0.0});
  for (Case& c : cases) {
    QFamily fam(std::move(c.meas), 12);
    const auto mumom = oracle::mu_moments(c.alpha, c.beta,
                                          fam.measure().rho(), 28);
    const oracle::GramSchmidt gl = oracle::gram_schmidt(mumom, 12);
    for (int n = fam.m() + 1; n <= 12; ++n) {
      const std::vector<double> y = oracle::operator_solve(
          c.alpha, c.beta, gl.coeffs[static_cast<std::size_t>(n)], n);
      const Polynomial<double> qh = fam.qhat_poly(n);
      const double scale = std::max(1.0, qortho::max_abs_coeff(qh));
      for (int i = 0; i <= n; ++i)
        CHECK(qh.coeff(static_cast<std::size_t>(i)) ==
              doctest::Approx(y[static_cast<std::size_t>(i)])
                  .epsilon(1e-9)
                  .scale(scale));
    }
  }
}

TEST_CASE("expansion coefficients: cascade formulas vs least-squares fit") {
  struct Case {
    Measure meas;
    std::vector<int> ns;
  };
  std::vector<Case> cases;
  cases.push_back({m1(), {4, 7, 12, 20}});
  cases.push_back({m1b(), {4, 9, 15}});
  cases.push_back({m2(), {6, 11, 18}});
  cases.push_back({m3(), {8, 13, 19}});
  for (Case& c : cases) {
    QFamily fam(std::move(c.meas), 25);
    for (int n : c.ns) {
      const ThetaTable table = fam.theta_coeffs(n, fam.default_primitive());
      const std::vector<double> fit = oracle::theta_lsq(fam, n);
      REQUIRE(table.theta.size() == fit.size());
      double scale = 0.0;
      for (double t : fit) scale = std::max(scale, std::abs(t));
      for (std::size_t i = 0; i < fit.size(); ++i)
        CHECK(table.theta[i] ==
              doctest::Approx(fit[i]).epsilon(1e-6).scale(scale));
      CHECK(fam.recurrence_residual(n, table) <= 1e-7);
    }
  }
}

TEST_CASE("recurrence tolerates a shifted primitive, rejects a wrong one") {
  QFamily fam(m1(), 16);
  Polynomial<double> shifted = fam.default_primitive();
  shifted += Polynomial<double>(std::vector<double>{5.0});
  const ThetaTable table = fam.theta_coeffs(10, shifted);
  CHECK(fam.recurrence_residual(10, table) <= 1e-7);

  // R' != rho: PrimitiveMismatch.
  CHECK_THROWS_AS(fam.theta_coeffs(10, fam.measure().rho()), Error);
  try {
    fam.theta_coeffs(10, fam.measure().rho());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrimitiveMismatch);
  }
}

TEST_CASE("structure window resolves the coefficient-index convention") {
  QFamily fam(m1(), 16);
  // Far from the window edge both variants are defined; variant A tracks the
  // projections, variant B reads an empty window and misses by O(1).
  for (int n : {8, 10, 14}) {
    const StructureReport rep = fam.structure_identity_check(n);
    CHECK(rep.outside_residual <= 1e-8);
    CHECK(rep.mismatch_a <= 1e-8);
    CHECK(rep.mismatch_b > 0.2);
  }
}

TEST_CASE("value-space and coefficient-space evaluations agree") {
  QFamily fam(m1(), 20);
  for (int n : {5, 12, 20}) {
    const Polynomial<double> qh = fam.qhat_poly(n);
    for (const cd z : {cd(3.5, 0.0), cd(0.4, 0.3), cd(-2.0, 1.0)}) {
      const Scaled3 v = fam.qhat_values(n, z);
      const cd direct = qh(z);
      const cd mine = v.v[0] * std::exp(v.exponent);
      CHECK(std::abs(mine - direct) <= 1e-9 * std::abs(direct));
      const cd dmine = v.v[1] * std::exp(v.exponent);
      CHECK(std::abs(dmine - qh.derivative()(z)) <=
            1e-8 * std::abs(qh.derivative()(z)));
    }
  }
}

TEST_CASE("Q vanishes at its pinned point and the Newton ratio matches") {
  QFamily fam(m1(), 18);
  for (int n : {1, 2, 5, 11, 18}) {
    const ScaledValue qz = fam.q_value(n, fam.zeta(n));
    // The pinning is exact up to roundoff in the subtraction; compare to the
    // magnitude of Qhat at zeta.
    const Scaled3 ref = n > fam.m() ? fam.qhat_values(n, fam.zeta(n))
                                    : fam.p_values(n, fam.zeta(n));
    const double scale = std::abs(ref.v[0]) * std::exp(ref.exponent);
    CHECK(std::abs(qz.v) * std::exp(qz.exponent) <= 1e-12 * scale);
  }
  // Newton ratio Q/Q' against a coefficient-space derivative.
  const int n = 9;
  const Polynomial<cd> q = fam.q_poly(n);
  const cd z(1.7, 0.4);
  const cd expect = q(z) / q.derivative()(z);
  CHECK(std::abs(fam.q_newton_ratio(n, z) - expect) <= 1e-9 * std::abs(expect));
}

TEST_CASE("real zero scans return full sets") {
  QFamily fam(m1(), 15);
  for (int n : {6, 11, 15}) {
    CHECK(fam.qhat_real_zeros(n).size() == static_cast<std::size_t>(n));
    CHECK(fam.qhat_deriv_real_zeros(n).size() ==
          static_cast<std::size_t>(n - 1));
    CHECK(fam.L_real_zeros(n).size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("per-degree zeta sequences are honored") {
  ZetaSpec zs;
  zs.use_sequence = true;
  for (int n = 1; n <= 8; ++n)
    zs.sequence.push_back(cd(3.0 + 0.25 * n, 0.5));
  QFamily fam(m1(), 8, zs);
  for (int n = 1; n <= 8; ++n) {
    CHECK(fam.zeta(n) == cd(3.0 + 0.25 * n, 0.5));
    const ScaledValue qz = fam.q_value(n, fam.zeta(n));
    CHECK(std::abs(qz.v) * std::exp(qz.exponent) <= 1e-10);
  }
}

TEST_CASE("zeta near the interval warns but does not refuse") {
  ZetaSpec zs;
  zs.constant = cd(0.5, 0.0);
  QFamily fam(m1(), 5, zs);
  CHECK_FALSE(fam.warnings().empty());
}

TEST_CASE("rho expansion identity") {
  for (Measure meas : {m1(), m2(), m3()}) {
    QFamily fam(std::move(meas), 16);
    for (int n = fam.m() + 1; n <= 12; n += 2)
      CHECK(fam.rho_expansion_residual(n) <= 1e-9);
  }
}

TEST_CASE("fault injection degrades the ODE residual") {
  QFamily fam(m1(), 10);
  CHECK(fam.ode_residual(5) <= 1e-8);
  fam.corrupt_b(5, 1, 1e-4);
  CHECK(fam.ode_residual(5) > 1e-6);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(QFamily(m1(), 1), Error);  // n_max < m+1
  QFamily fam(m1(), 6);
  CHECK_THROWS_AS(fam.qhat_poly(1), Error);    // n <= m
  CHECK_THROWS_AS(fam.qhat_poly(7), Error);    // beyond n_max
  CHECK_THROWS_AS(fam.b_row(-1), Error);
  CHECK_THROWS_AS(fam.zeta(0), Error);
  CHECK_THROWS_AS(fam.theta_coeffs(3, fam.default_primitive()), Error);

  ZetaSpec zs;
  zs.use_sequence = true;
  zs.sequence = {cd(3.5, 0.0)};  // too short for n_max 6
  CHECK_THROWS_AS(QFamily(m1(), 6, zs), Error);
}

TEST_CASE("verification sweep passes on a healthy family and localizes faults") {
  QFamily fam(m1(), 14);
  qortho::VerifyOptions opt;
  const std::vector<qortho::CheckResult> checks = qortho::run_verify(fam, opt);
  REQUIRE(checks.size() == 7);
  for (const auto& c : checks) {
    INFO(c.name, ": ", c.detail);
    if (c.applicable) CHECK(c.pass);
  }

  QFamily bad(m1(), 14);
  bad.corrupt_b(6, 1, 1e-5);
  const auto bad_checks = qortho::run_verify(bad, opt);
  bool ode_failed = false;
  for (const auto& c : bad_checks)
    if (c.name == "ode" && !c.pass) ode_failed = true;
  CHECK(ode_failed);
}
