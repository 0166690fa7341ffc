#include "core/flowfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"
#include "core/roots.hpp"

namespace qortho {
namespace {

using cd = std::complex<double>;

constexpr double kPoleTol = 1e-12;
constexpr double kGridGuard = 1e-9;

double min_pole_distance(cd z, const std::vector<double>& sources) {
  double d = std::min(std::abs(z - 1.0), std::abs(z + 1.0));
  for (double w : sources) d = std::min(d, std::abs(z - w));
  return d;
}

}  // namespace

FlowField::FlowField(QFamily& fam, int n, bool exploratory)
    : fam_(fam), n_(n) {
  if (fam.m() != 1 && !exploratory)
    fail(ErrorCode::NotApplicable,
         "the flow model is stated for m == 1; pass exploratory to force");
  if (n < std::max(2, fam.m() + 1))
    fail(ErrorCode::InvalidArgument, "flow field needs n >= max(2, m+1)");
  if (fam.m() != 1)
    note_ = "exploratory: the model is stated for m == 1, this measure has m == " +
            std::to_string(fam.m());
  a_ = fam.params().alpha + 1.0;
  b_ = fam.params().beta + 1.0;
  lambda_ = fam.lambda(n);
  sources_ = fam.qhat_deriv_real_zeros(n);
  if (static_cast<int>(sources_.size()) != n - 1) {
    const std::string msg = "located " + std::to_string(sources_.size()) +
                            " of " + std::to_string(n - 1) +
                            " critical points on the real line";
    if (fam.m() == 1) fail(ErrorCode::NonConvergence, msg);
    note_ += note_.empty() ? msg : "; " + msg;
  }
  stagnation_ = fam.L_real_zeros(n);
}

std::complex<double> FlowField::velocity(std::complex<double> z) const {
  if (min_pole_distance(z, sources_) <= kPoleTol)
    fail(ErrorCode::PoleAt, "velocity requested at a pole");
  const Scaled3 lv = fam_.L_values(n_, z);
  const Scaled3 qv = fam_.qhat_values(n_, z);
  return lambda_ * (lv.v[0] / qv.v[1]) *
         std::exp(lv.exponent - qv.exponent) / (1.0 - z * z);
}

double FlowField::far_field_coefficient() const {
  constexpr int K = 16;
  constexpr double R = 1e6;
  cd acc(0.0, 0.0);
  for (int k = 0; k < K; ++k) {
    const double th = 2.0 * std::numbers::pi * k / K;
    const cd z = R * cd(std::cos(th), std::sin(th));
    acc += z * velocity(z);
  }
  return (acc / static_cast<double>(K)).real();
}

std::complex<double> FlowField::residue_at_source(int i) const {
  if (i < 0 || i >= static_cast<int>(sources_.size()))
    fail(ErrorCode::InvalidArgument, "source index out of range");
  const double w = sources_[static_cast<std::size_t>(i)];
  double r = std::min(std::abs(w - 1.0), std::abs(w + 1.0));
  for (int j = 0; j < static_cast<int>(sources_.size()); ++j)
    if (j != i) r = std::min(r, std::abs(w - sources_[static_cast<std::size_t>(j)]));
  r *= 0.5;
  constexpr int K = 64;
  cd acc(0.0, 0.0);
  for (int k = 0; k < K; ++k) {
    const double th = 2.0 * std::numbers::pi * k / K;
    const cd z = w + r * cd(std::cos(th), std::sin(th));
    acc += (z - w) * velocity(z);
  }
  return acc / static_cast<double>(K);
}

StagnationCheck FlowField::stagnation_check() const {
  StagnationCheck out;
  for (double t : stagnation_)
    out.max_speed_at_stagnation =
        std::max(out.max_speed_at_stagnation, std::abs(velocity(cd(t, 0.0))));

  std::vector<double> speeds;
  const int res = 41;
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const cd z(-2.0 + 4.0 * ix / (res - 1), -2.0 + 4.0 * iy / (res - 1));
      if (min_pole_distance(z, sources_) <= kGridGuard) continue;
      speeds.push_back(std::abs(velocity(z)));
    }
  std::sort(speeds.begin(), speeds.end());
  out.grid_median_speed = speeds[speeds.size() / 2];
  out.ratio = out.max_speed_at_stagnation / out.grid_median_speed;
  return out;
}

std::vector<GridSample> FlowField::sample_field(double re0, double re1,
                                                int nre, double im0,
                                                double im1, int nim) const {
  if (re1 < re0 || im1 < im0)
    fail(ErrorCode::InvalidArgument, "bad grid specification");
  std::vector<GridSample> out;
  if (nre < 1 || nim < 1) return out;
  out.reserve(static_cast<std::size_t>(nre) * static_cast<std::size_t>(nim));
  for (int iy = 0; iy < nim; ++iy)
    for (int ix = 0; ix < nre; ++ix) {
      GridSample s;
      s.re = (nre == 1) ? re0 : re0 + (re1 - re0) * ix / (nre - 1);
      s.im = (nim == 1) ? im0 : im0 + (im1 - im0) * iy / (nim - 1);
      const cd z(s.re, s.im);
      if (min_pole_distance(z, sources_) > kGridGuard) {
        s.valid = true;
        s.v = velocity(z);
      }
      out.push_back(s);
    }
  return out;
}

double FlowField::cross_check() const {
  constexpr int K = 16;
  double worst = 0.0;
  for (int k = 0; k < K; ++k) {
    const double th = 2.0 * std::numbers::pi * (k + 0.5) / K;
    const cd z = 2.0 * cd(std::cos(th), std::sin(th));
    if (min_pole_distance(z, sources_) <= 1e-6) continue;
    const cd v1 = velocity(z);
    const Scaled3 qv = fam_.qhat_values(n_, z);
    const cd v2 =
        a_ / (z - 1.0) + b_ / (z + 1.0) + qv.v[2] / qv.v[1];
    worst = std::max(worst,
                     std::abs(v1 - v2) / std::max({std::abs(v1), std::abs(v2), 1e-300}));
  }
  return worst;
}

NumeratorRootReport FlowField::numerator_root_report() const {
  const double aa = fam_.params().alpha, bb = fam_.params().beta;
  // Operator-form numerator (1-x^2) Qhat'' + (beta-alpha-(alpha+beta+2)x) Qhat'
  // as a scaled mantissa: the sign is right, so the scan works; the bisection
  // root needs no polish at the 1e-8 matching tolerance.
  auto f = [this, aa, bb](double x) {
    const Scaled3 v = fam_.qhat_values(n_, cd(x, 0.0));
    return ((1.0 - x * x) * v.v[2] +
            (bb - aa - (aa + bb + 2.0) * x) * v.v[1])
        .real();
  };
  auto df = [](double) { return 0.0; };
  NumeratorRootReport rep;
  rep.roots = real_zeros(f, df, n_);
  for (double r : rep.roots) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : stagnation_) best = std::min(best, std::abs(r - t));
    if (best > 1e-8) rep.unmatched.push_back(r);
  }
  return rep;
}

}  // namespace qortho
