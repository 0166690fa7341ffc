#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace qortho {

// Dense univariate polynomial, coefficients in ascending degree order.
// The zero polynomial has an empty coefficient vector and degree() == -1.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t k, T lead = T(1)) {
    std::vector<T> c(k + 1, T(0));
    c[k] = lead;
    return Polynomial(std::move(c));
  }

  static Polynomial from_roots(const std::vector<T>& roots, T lead = T(1)) {
    Polynomial p(std::vector<T>{lead});
    for (const T& r : roots) p = p * Polynomial(std::vector<T>{-r, T(1)});
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  void set_coeff(std::size_t k, T v) {
    if (k >= c_.size()) c_.resize(k + 1, T(0));
    c_[k] = v;
    trim();
  }

  // Horner evaluation; the result type promotes over both T and X,
  // so a real polynomial evaluates cleanly at complex arguments.
  template <typename X>
  auto operator()(const X& x) const {
    using R = decltype(T{} * x + T{});
    R acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + R(c_[i]);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      d[k - 1] = T(static_cast<double>(k)) * c_[k];
    return Polynomial(std::move(d));
  }

  // Antiderivative with integration constant 0.
  Polynomial antiderivative() const {
    if (c_.empty()) return Polynomial();
    std::vector<T> a(c_.size() + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
      a[k + 1] = c_[k] / T(static_cast<double>(k + 1));
    return Polynomial(std::move(a));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (T& c : c_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }
  friend Polynomial operator-(Polynomial a) {
    for (T& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const T& s) {
    a *= s;
    return a;
  }
  friend Polynomial operator*(const T& s, Polynomial a) {
    a *= s;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

template <typename T>
double max_abs_coeff(const Polynomial<T>& p) {
  double m = 0.0;
  for (const T& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// Max absolute coefficient-wise difference.
template <typename T>
double coeff_distance(const Polynomial<T>& a, const Polynomial<T>& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

inline Polynomial<std::complex<double>> to_complex(const Polynomial<double>& p) {
  std::vector<std::complex<double>> c(p.coeffs().begin(), p.coeffs().end());
  return Polynomial<std::complex<double>>(std::move(c));
}

}  // namespace qortho
