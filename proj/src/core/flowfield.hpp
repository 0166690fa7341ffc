#pragma once

#include <complex>
#include <string>
#include <vector>

#include "core/qfamily.hpp"

namespace qortho {

struct GridSample {
  double re = 0.0, im = 0.0;
  bool valid = false;  // false: within the pole guard radius, no velocity
  std::complex<double> v{0.0, 0.0};
};

struct StagnationCheck {
  double max_speed_at_stagnation = 0.0;
  double grid_median_speed = 0.0;
  double ratio = 0.0;  // max / median
};

struct NumeratorRootReport {
  std::vector<double> roots;      // real zeros of the operator-form numerator
  std::vector<double> unmatched;  // those not matching any L_n zero to 1e-8
};

// The point-vortex interpretation of the differential relation: the field
//   V(z) = lambda_n L_n(z) / ((1 - z^2) Qhat_n'(z))
// has simple poles of residue +1 at the n-1 critical points of Q_n, poles at
// +-1 with residues a = alpha+1 and b = beta+1, stagnation points at the
// zeros of L_n, and z V(z) -> n - 1 + a + b at infinity. Stated for m == 1;
// other m only behind the exploratory flag.
class FlowField {
 public:
  FlowField(QFamily& fam, int n, bool exploratory = false);

  int n() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& sources() const { return sources_; }
  const std::vector<double>& stagnation() const { return stagnation_; }
  const std::string& note() const { return note_; }

  // PoleAt within 1e-12 of a pole.
  std::complex<double> velocity(std::complex<double> z) const;

  // K-point average of z V(z) on |z| = 1e6; equals n - 1 + a + b up to the
  // K-th Fourier tail, far below double precision.
  double far_field_coefficient() const;

  // Small-circle contour average of (z - w_i) V(z); expected +1.
  std::complex<double> residue_at_source(int i) const;

  StagnationCheck stagnation_check() const;

  // Row-major samples (im outer, re inner); points within 1e-9 of a pole are
  // marked invalid.
  std::vector<GridSample> sample_field(double re0, double re1, int nre,
                                       double im0, double im1, int nim) const;

  // Worst relative disagreement between the L_n form of V and the partial
  // fraction form a/(z-1) + b/(z+1) + Q''/Q' on a probe ring.
  double cross_check() const;

  NumeratorRootReport numerator_root_report() const;

 private:
  QFamily& fam_;
  int n_;
  double a_, b_;
  double lambda_;
  std::vector<double> sources_;
  std::vector<double> stagnation_;
  std::string note_;
};

}  // namespace qortho
