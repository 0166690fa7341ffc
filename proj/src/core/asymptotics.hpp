#pragma once

#include <complex>
#include <string>
#include <vector>

#include "core/qfamily.hpp"

namespace qortho {

// Exterior conformal map phi(z) = z + sqrt(z-1) sqrt(z+1) (principal roots):
// |phi| >= 1 off [-1,1], and on the cut the upper-limit value e^{i arccos x}.
std::complex<double> phi_map(std::complex<double> z);

// Euclidean distance from z to the segment [-1,1].
double dist_to_interval(std::complex<double> z);

struct Geometry {
  std::complex<double> zeta;
  double eta = 0.0;    // ln |phi(zeta)|, the ellipse parameter
  double delta = 0.0;  // distance from zeta to [-1,1]
  double Delta = 0.0;  // max(|zeta-1|, |zeta+1|)
};
Geometry geometry(std::complex<double> zeta);

// `count` points of the level set |phi| = |phi(zeta)| (a Bernstein ellipse),
// z_j = cosh(eta + i theta_j). OnInterval when the ellipse degenerates.
// Each point is verified to sit on the level set to 1e-10.
std::vector<std::complex<double>> ellipse_points(std::complex<double> zeta,
                                                 int count);

// Szego function of the measure's 1/rho factor, in the closed product form
// valid for polynomial rho: Phi(rho,z) = 2^{-m} prod_i (1 - 1/(phi(z) phi(nu_i))).
// BranchCut when z lies on [-1,1].
std::complex<double> szego_Phi(const Measure& meas, std::complex<double> z);

// phi_m = 2^m exp( (1/2pi) \int log rho(t) / sqrt(1-t^2) dt ), by
// Gauss-Chebyshev with doubled node counts until 1e-12.
double phi_m_constant(const Measure& meas);

// Limits of the monic ratios: Qhat_n(z)/P_n(z) -> 2^m Phi(rho,z) off the cut,
// and Q_n(z)/P_n(zeta_n) -> -2^m Phi(rho,zeta) inside the zeta ellipse.
std::complex<double> exterior_ratio_limit(const Measure& meas,
                                          std::complex<double> z);
std::complex<double> interior_ratio_limit(const Measure& meas,
                                          std::complex<double> zeta);

struct RatioRow {
  int n = 0;
  std::complex<double> qhat_ratio, q_ratio, interior_ratio;
  std::complex<double> target_exterior, target_interior;
  double err_qhat = 0.0, err_q = 0.0, err_interior = 0.0;
  // q_ratio only converges for |phi(z)| > |phi(zeta_n)|, interior_ratio only
  // for |phi(z)| < |phi(zeta_n)| away from the cut; flags mark applicability
  // instead of erroring (RegionMismatch semantics).
  bool exterior_applicable = false, interior_applicable = false;
};
std::vector<RatioRow> ratio_diagnostic(QFamily& fam, const std::vector<int>& ns,
                                       std::complex<double> z);

struct NthRootRow {
  int n = 0;
  double value = 0.0;   // |Qhat_n(z)|^{1/n}
  double target = 0.0;  // |phi(z)| / 2
  double abs_error = 0.0;
};
std::vector<NthRootRow> nth_root_diagnostic(QFamily& fam,
                                            const std::vector<int>& ns,
                                            std::complex<double> z);

enum class ZeroClass { NearInterval, NearEllipse, Stray };

struct ZeroReport {
  int n = 0;
  double band = 0.0;
  std::vector<std::complex<double>> zeros;  // all n zeros of Q_n
  std::vector<ZeroClass> cls;
  int count_interval = 0, count_ellipse = 0, count_stray = 0;
  double max_abs = 0.0;       // max |zero|
  double radius_bound = 0.0;  // Delta(zeta_n) + 1, the containment bound
  double min_gap = 0.0;       // min pairwise distance (simplicity margin)
  double max_stray_distance = 0.0;
  bool roots_converged = true;
};
// near-interval: dist(z, [-1,1]) <= band; otherwise near-ellipse when
// | ln|phi(z)| - eta(zeta_n) | <= band (conformal band); otherwise stray.
ZeroReport zero_accumulation_report(QFamily& fam, int n, double band,
                                    unsigned seed = 0);

// Kolmogorov-Smirnov distance between the points (restricted to [-1,1]) and
// the arcsine law F(x) = arccos(-x)/pi.
double arcsine_distance(const std::vector<double>& xs);

struct InterlacingReport {
  bool applicable = false;  // theorem stated for m <= 1; else exploratory
  bool interlaced = false;
  double min_separation = 0.0;
  std::string message;
  std::vector<double> critical_points;  // zeros of Qhat_n'
  std::vector<double> l_zeros;          // zeros of L_n
};
// m <= 1: asserts the interlacing theorem (NotApplicable when the derivative
// has zeros the real scan cannot account for). m >= 2: report only.
InterlacingReport interlacing_check(QFamily& fam, int n);

}  // namespace qortho
