#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "core/measure.hpp"

namespace qortho {

// Coefficient space is only trusted up to this degree: monic-basis
// coefficients grow geometrically while on-interval values shrink, so Horner
// past ~degree 40 has no correct digits left. Value-space recurrences take
// over beyond it.
inline constexpr int kCoeffCap = 40;

struct ZetaSpec {
  std::complex<double> constant{3.5, 0.0};
  // When use_sequence: sequence[i] is the zero target for Q_{i+1}.
  std::vector<std::complex<double>> sequence;
  bool use_sequence = false;
  std::complex<double> at(int n) const;
};

// value = v * exp(exponent)
struct ScaledValue {
  std::complex<double> v{0.0, 0.0};
  double exponent = 0.0;
};

// Value and first two derivatives under a common exponent.
struct Scaled3 {
  std::array<std::complex<double>, 3> v{};
  double exponent = 0.0;
};

struct ThetaTable {
  int n = 0;
  Polynomial<double> R;
  // index i <-> k = i - (m+1), k = -(m+1)..(m+1)
  std::vector<double> theta, e, d;
  // index i <-> k = i - 1, k = -1..(m+1)
  std::vector<double> ctilde;
};

struct ExistenceResult {
  bool exists = false;
  double residual = 0.0;   // <L_n, 1> under the Jacobi weight (signed)
  double threshold = 0.0;  // 1e-9 * sqrt(tau_0 * l_n)
};

struct StructureReport {
  double outside_residual = 0.0;  // projection mass outside the window
  double mismatch_a = 0.0;        // projected coeffs vs d_{n,n-k}
  double mismatch_b = 0.0;        // projected coeffs vs d_{n-k,k}
};

// The family Q_n orthogonal w.r.t. the pair (L, mu): connection rows,
// construction in coefficient and value space, and every residual check of
// the defining identities. Rows and bases are cached; building degree n
// internally requires both bases up to n+m+1.
class QFamily {
 public:
  QFamily(Measure meas, int nmax, ZetaSpec zeta = {}, unsigned seed = 0);

  const Measure& measure() const { return meas_; }
  const JacobiParams& params() const { return meas_.params(); }
  int m() const { return meas_.m(); }
  int nmax() const { return nmax_; }
  unsigned seed() const { return seed_; }
  const MuBasis& mu() const { return mu_; }
  const Recurrence& jacobi_rec() const { return jac_rec_; }
  QuadCache& cache() { return cache_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double lambda(int n) const { return jacobi_lambda(n, params()); }
  double tau_n(int n) const { return taus_.at(n); }
  double log_tau_n(int n) const { return log_taus_.at(n); }
  std::complex<double> zeta(int n) const { return zeta_.at(n); }

  // b[k] = b_{n,n-k} for k = 0..min(m,n); b[0] stored as exactly 1 after an
  // internal consistency assertion.
  const std::vector<double>& b_row(int n);

  Polynomial<double> qhat_poly(int n);                // n > m, n <= kCoeffCap
  Polynomial<std::complex<double>> q_poly(int n);     // n <= kCoeffCap

  Scaled3 qhat_values(int n, std::complex<double> z);  // n > m
  Scaled3 L_values(int n, std::complex<double> z);
  Scaled3 p_values(int n, std::complex<double> z);
  ScaledValue q_value(int n, std::complex<double> z);
  // Newton ratio Q_n(z)/Q_n'(z) for the functor root finder (n > m).
  std::complex<double> q_newton_ratio(int n, std::complex<double> z);

  // Real zeros via the sign-scan root finder (value-space mantissas).
  std::vector<double> qhat_real_zeros(int n);        // zeros of Qhat_n
  std::vector<double> qhat_deriv_real_zeros(int n);  // zeros of Qhat_n'
  std::vector<double> L_real_zeros(int n);           // zeros of L_n

  double ode_residual(int n);             // n > m, coefficient space
  double orthogonality_residual(int n);   // n > m, value space, mu-adaptive
  double tail_residual(int n);            // max normalized |b_{n,j}|, j < n-m
  ExistenceResult existence_check(int n); // n >= 1
  double low_moment_residual(int n);      // n > m
  double rho_expansion_residual(int n);   // n > m, coefficient space

  ThetaTable theta_coeffs(int n, const Polynomial<double>& R);  // n > 2m+1
  Polynomial<double> default_primitive() const;  // antiderivative of rho
  double recurrence_residual(int n, const ThetaTable& table);
  StructureReport structure_identity_check(int n);  // n > m+1

  // Fault-injection hook for tests: perturbs b_{n,n-k} in place.
  void corrupt_b(int n, int k, double delta);

 private:
  std::array<double, 3> qhat_values_real(int n, double x, double* exponent);
  std::vector<double> gammas(int n);  // lambda_n b_{n,n-k} / lambda_{n-k}
  double ctilde(int n, int k);           // k in [-1, m+1]
  double d_coeff(int nu, int kappa);     // d_{nu,nu-kappa}, 0 on empty window
  void require_range(int n, int lo, const char* what) const;

  Measure meas_;
  int nmax_;
  int nmax_mu_;
  ZetaSpec zeta_;
  unsigned seed_;
  QuadCache cache_;
  MuBasis mu_;
  Recurrence jac_rec_;
  JacobiBasis jbasis_;
  std::vector<double> taus_, log_taus_;
  std::map<int, std::vector<double>> b_rows_;
  std::map<int, Scaled3> qhat_at_zeta_;
  std::vector<std::string> warnings_;
};

}  // namespace qortho
