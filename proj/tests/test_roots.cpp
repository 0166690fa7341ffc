#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core/jacobi.hpp"
#include "core/polynomial.hpp"
#include "core/roots.hpp"
#include "doctest.h"

using qortho::FunctorOptions;
using qortho::Polynomial;
using qortho::RootResult;
using qortho::eval_monic_tail;
using qortho::find_roots;
using qortho::real_zeros;
using cd = std::complex<double>;

namespace {

double match_distance(const std::vector<cd>& found, const std::vector<cd>& truth) {
  double worst = 0.0;
  for (const cd& t : truth) {
    double best = 1e300;
    for (const cd& f : found) best = std::min(best, std::abs(f - t));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("coefficient iteration recovers known complex roots") {
  const std::vector<cd> truth{{1.5, 0.0}, {-0.3, 0.7}, {-0.3, -0.7}, {2.0, 1.0},
                              {2.0, -1.0}};
  const auto p = Polynomial<cd>::from_roots(truth);
  const RootResult r = find_roots(p);
  REQUIRE(r.converged);
  CHECK(r.roots.size() == truth.size());
  CHECK(match_distance(r.roots, truth) < 1e-10);
  CHECK(r.residual < 1e-10);
}

TEST_CASE("real-coefficient overload and root ordering") {
  const auto p = Polynomial<double>::from_roots({-0.9, -0.1, 0.4, 0.8}, 2.0);
  const RootResult r = find_roots(p);
  REQUIRE(r.converged);
  REQUIRE(r.roots.size() == 4);
  // Sorted by (Re, Im).
  for (std::size_t i = 1; i < r.roots.size(); ++i)
    CHECK(r.roots[i - 1].real() <= r.roots[i].real() + 1e-14);
  CHECK(std::abs(r.roots[0] - cd(-0.9, 0.0)) < 1e-11);
  CHECK(std::abs(r.roots[3] - cd(0.8, 0.0)) < 1e-11);
}

TEST_CASE("clustered roots are flagged suspect or resolved") {
  // (x - 0.5)^2 (x + 1.25): double root stresses the polish step.
  const auto p = Polynomial<double>::from_roots({0.5, 0.5, -1.25});
  const RootResult r = find_roots(p);
  REQUIRE(r.roots.size() == 3);
  CHECK(match_distance(r.roots, {{0.5, 0.0}, {-1.25, 0.0}}) < 1e-6);
}

TEST_CASE("degenerate degrees") {
  CHECK(find_roots(Polynomial<double>(std::vector<double>{3.0})).roots.empty());
  const auto lin = Polynomial<double>(std::vector<double>{-1.0, 2.0});
  const RootResult r = find_roots(lin);
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - cd(0.5, 0.0)) < 1e-14);
}

TEST_CASE("functor iteration matches coefficient iteration on a tail family") {
  // Monic Legendre P_18 evaluated only through the value-space recurrence.
  const qortho::JacobiParams jp{0.0, 0.0};
  const qortho::Recurrence rec = qortho::jacobi_recurrence(20, jp);
  const int n = 18;
  auto ratio = [&](cd z) {
    const auto t = eval_monic_tail(z, n, 1, rec);
    return t.at(n)[0] / t.at(n)[1];
  };
  FunctorOptions opt;
  opt.degree = n;
  opt.radius = 1.5;
  const RootResult rf = find_roots(ratio, opt);
  REQUIRE(rf.converged);
  REQUIRE(rf.roots.size() == static_cast<std::size_t>(n));

  qortho::JacobiBasis basis(n, jp);
  const RootResult rc = find_roots(basis.poly(n));
  REQUIRE(rc.converged);
  CHECK(match_distance(rf.roots, rc.roots) < 1e-9);
  // All Legendre zeros are real and inside the interval.
  for (const cd& z : rf.roots) {
    CHECK(std::abs(z.imag()) < 1e-10);
    CHECK(std::abs(z.real()) < 1.0);
  }
}

TEST_CASE("real zero scan finds every Legendre zero") {
  const qortho::JacobiParams jp{0.0, 0.0};
  const int n = 10;
  const qortho::Recurrence rec = qortho::jacobi_recurrence(n, jp);
  auto f = [&](double x) { return eval_monic_tail(x, n, 1, rec).at(n)[0]; };
  auto df = [&](double x) { return eval_monic_tail(x, n, 1, rec).at(n)[1]; };
  const std::vector<double> zs = real_zeros(f, df, n);
  REQUIRE(zs.size() == static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < zs.size(); ++i) CHECK(zs[i - 1] < zs[i]);
  // Symmetry of the even-weight family.
  for (int i = 0; i < n; ++i)
    CHECK(zs[static_cast<std::size_t>(i)] ==
          doctest::Approx(-zs[static_cast<std::size_t>(n - 1 - i)]).epsilon(1e-12));

  qortho::JacobiBasis basis(n, jp);
  const RootResult rc = find_roots(basis.poly(n));
  std::vector<double> ref;
  for (const cd& z : rc.roots) ref.push_back(z.real());
  std::sort(ref.begin(), ref.end());
  for (std::size_t i = 0; i < ref.size(); ++i)
    CHECK(zs[i] == doctest::Approx(ref[i]).epsilon(1e-11));
}

TEST_CASE("real zero scan tolerates a shifted bracket") {
  auto f = [](double x) { return (x - 2.0) * (x - 3.0); };
  auto df = [](double x) { return 2.0 * x - 5.0; };
  const std::vector<double> zs = real_zeros(f, df, 2, 1.0, 4.0);
  REQUIRE(zs.size() == 2);
  CHECK(zs[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(zs[1] == doctest::Approx(3.0).epsilon(1e-12));
}
