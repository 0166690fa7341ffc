#include <complex>
#include <vector>

#include "core/polynomial.hpp"
#include "doctest.h"

using qortho::Polynomial;
using qortho::coeff_distance;
using qortho::max_abs_coeff;
using qortho::to_complex;
using cd = std::complex<double>;

TEST_CASE("construction trims and exposes coefficients") {
  Polynomial<double> p(std::vector<double>{1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p.coeff(0) == 1.0);
  CHECK(p.coeff(1) == 2.0);
  CHECK(p.coeff(5) == 0.0);
  CHECK(p.leading() == 2.0);

  Polynomial<double> z(std::vector<double>{0.0, 0.0});
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
}

TEST_CASE("monomial and from_roots") {
  const auto x3 = Polynomial<double>::monomial(3, 2.0);
  CHECK(x3.degree() == 3);
  CHECK(x3(2.0) == doctest::Approx(16.0));

  const auto p = Polynomial<double>::from_roots({1.0, -2.0}, 3.0);
  // 3 (x-1)(x+2) = 3x^2 + 3x - 6
  CHECK(p.coeff(2) == doctest::Approx(3.0));
  CHECK(p.coeff(1) == doctest::Approx(3.0));
  CHECK(p.coeff(0) == doctest::Approx(-6.0));
  CHECK(p(1.0) == doctest::Approx(0.0));
  CHECK(p(-2.0) == doctest::Approx(0.0));
}

TEST_CASE("arithmetic") {
  const Polynomial<double> a(std::vector<double>{1.0, 1.0});
  const Polynomial<double> b(std::vector<double>{-1.0, 1.0});
  const auto prod = a * b;  // x^2 - 1
  CHECK(prod.coeff(0) == doctest::Approx(-1.0));
  CHECK(prod.coeff(1) == doctest::Approx(0.0));
  CHECK(prod.coeff(2) == doctest::Approx(1.0));

  const auto sum = a + b;  // 2x
  CHECK(sum.degree() == 1);
  CHECK(sum.coeff(1) == doctest::Approx(2.0));

  const auto diff = a - a;
  CHECK(diff.is_zero());

  const auto scaled = a * 2.0;
  CHECK(scaled.coeff(0) == doctest::Approx(2.0));
  CHECK((2.0 * a).coeff(1) == doctest::Approx(2.0));
  CHECK((-a).coeff(0) == doctest::Approx(-1.0));
}

TEST_CASE("derivative and antiderivative invert each other") {
  const Polynomial<double> p(std::vector<double>{3.0, -2.0, 0.5, 4.0});
  const auto back = p.derivative().antiderivative();
  // Integration drops the constant term; everything else returns exactly.
  CHECK(coeff_distance(back + Polynomial<double>(std::vector<double>{3.0}), p) ==
        doctest::Approx(0.0));
  CHECK(p.derivative().coeff(0) == doctest::Approx(-2.0));
  CHECK(p.derivative().coeff(2) == doctest::Approx(12.0));
  CHECK(Polynomial<double>().derivative().is_zero());
}

TEST_CASE("evaluation promotes to complex") {
  const Polynomial<double> p(std::vector<double>{-1.0, 0.0, 1.0});  // x^2 - 1
  const cd z(0.0, 1.0);
  const cd v = p(z);
  CHECK(v.real() == doctest::Approx(-2.0));
  CHECK(v.imag() == doctest::Approx(0.0));

  const auto pc = to_complex(p);
  CHECK(std::abs(pc(z) - v) == doctest::Approx(0.0));
}

TEST_CASE("coefficient metrics") {
  const Polynomial<double> p(std::vector<double>{1.0, -5.0, 2.0});
  CHECK(max_abs_coeff(p) == doctest::Approx(5.0));
  const Polynomial<double> q(std::vector<double>{1.0, -5.0});
  CHECK(coeff_distance(p, q) == doctest::Approx(2.0));
}

TEST_CASE("set_coeff grows and trims") {
  Polynomial<double> p;
  p.set_coeff(4, 2.0);
  CHECK(p.degree() == 4);
  p.set_coeff(4, 0.0);
  CHECK(p.degree() == -1);
}
