#include "qortho/qortho.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"
#include "core/flowfield.hpp"
#include "core/measure.hpp"
#include "core/qfamily.hpp"
#include "core/verify.hpp"

using qortho::Error;
using qortho::ErrorCode;
using cd = std::complex<double>;

struct qo_measure {
  qortho::Measure meas;
};

struct qo_family {
  qortho::QFamily fam;
};

struct qo_flow {
  qo_family* owner;  // must outlive this handle
  qortho::FlowField flow;
};

namespace {

thread_local std::string g_error;

qo_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return QO_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidMeasure: return QO_ERR_INVALID_MEASURE;
    case ErrorCode::DegenerateDenominator: return QO_ERR_DEGENERATE_DENOMINATOR;
    case ErrorCode::NonConvergence: return QO_ERR_NONCONVERGENCE;
    case ErrorCode::BudgetExceeded: return QO_ERR_BUDGET_EXCEEDED;
    case ErrorCode::BranchCut: return QO_ERR_BRANCH_CUT;
    case ErrorCode::OnInterval: return QO_ERR_ON_INTERVAL;
    case ErrorCode::NotApplicable: return QO_ERR_NOT_APPLICABLE;
    case ErrorCode::PrimitiveMismatch: return QO_ERR_PRIMITIVE_MISMATCH;
    case ErrorCode::PoleAt: return QO_ERR_POLE;
  }
  return QO_ERR_INTERNAL;
}

template <typename F>
qo_status wrap(F&& f) {
  try {
    f();
    return QO_OK;
  } catch (const Error& e) {
    g_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return QO_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown failure";
    return QO_ERR_INTERNAL;
  }
}

qo_status bad_arg(const char* msg) {
  g_error = msg;
  return QO_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* qo_version(void) { return "1.0.0"; }

const char* qo_last_error(void) { return g_error.c_str(); }

/* ---- measure ---------------------------------------------------------- */

qo_status qo_measure_create(double alpha, double beta, double rho_lead,
                            const double* roots, int m, qo_measure** out) {
  if (!out) return bad_arg("null output handle");
  if (m < 0) return bad_arg("negative root count");
  if (m > 0 && !roots) return bad_arg("null roots with m > 0");
  *out = nullptr;
  return wrap([&] {
    qortho::MeasureSpec spec;
    spec.params = {alpha, beta};
    spec.rho_lead = rho_lead;
    for (int i = 0; i < m; ++i)
      spec.rho_roots.emplace_back(roots[2 * i], roots[2 * i + 1]);
    *out = new qo_measure{qortho::Measure::validate(spec)};
  });
}

void qo_measure_destroy(qo_measure* meas) { delete meas; }

qo_status qo_measure_info(const qo_measure* meas, double* alpha, double* beta,
                          int* m, double* rho_lead) {
  if (!meas) return bad_arg("null measure");
  if (alpha) *alpha = meas->meas.params().alpha;
  if (beta) *beta = meas->meas.params().beta;
  if (m) *m = meas->meas.m();
  if (rho_lead) *rho_lead = meas->meas.spec().rho_lead;
  return QO_OK;
}

qo_status qo_measure_rho(const qo_measure* meas, double x, double* out) {
  if (!meas || !out) return bad_arg("null argument");
  *out = meas->meas.rho_at(x);
  return QO_OK;
}

/* ---- family ----------------------------------------------------------- */

qo_status qo_family_create(const qo_measure* meas, int n_max, double zeta_re,
                           double zeta_im, const double* zeta_seq,
                           unsigned seed, qo_family** out) {
  if (!meas || !out) return bad_arg("null argument");
  *out = nullptr;
  return wrap([&] {
    qortho::ZetaSpec zs;
    if (zeta_seq) {
      zs.use_sequence = true;
      for (int i = 0; i < n_max; ++i)
        zs.sequence.emplace_back(zeta_seq[2 * i], zeta_seq[2 * i + 1]);
    } else {
      zs.constant = cd(zeta_re, zeta_im);
    }
    *out = new qo_family{qortho::QFamily(meas->meas, n_max, zs, seed)};
  });
}

void qo_family_destroy(qo_family* fam) { delete fam; }

qo_status qo_family_warning_count(const qo_family* fam, int* out) {
  if (!fam || !out) return bad_arg("null argument");
  *out = static_cast<int>(fam->fam.warnings().size());
  return QO_OK;
}

const char* qo_family_warning(const qo_family* fam, int idx) {
  if (!fam || idx < 0 ||
      idx >= static_cast<int>(fam->fam.warnings().size()))
    return nullptr;
  return fam->fam.warnings()[static_cast<std::size_t>(idx)].c_str();
}

qo_status qo_family_lambda(const qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  if (n < 0 || n > fam->fam.nmax()) return bad_arg("n out of range");
  return wrap([&] { *out = fam->fam.lambda(n); });
}

qo_status qo_family_zeta(const qo_family* fam, int n, double* re, double* im) {
  if (!fam || !re || !im) return bad_arg("null argument");
  return wrap([&] {
    const cd z = fam->fam.zeta(n);
    *re = z.real();
    *im = z.imag();
  });
}

qo_status qo_family_mu_recurrence(const qo_family* fam, int n, double* A,
                                  double* B) {
  if (!fam || !A || !B) return bad_arg("null argument");
  return wrap([&] {
    const qortho::Recurrence& rec = fam->fam.mu().recurrence();
    if (n < 0 || n > rec.nmax())
      qortho::fail(ErrorCode::InvalidArgument, "recurrence index out of range");
    *A = rec.A[static_cast<std::size_t>(n)];
    *B = rec.B[static_cast<std::size_t>(n)];
  });
}

qo_status qo_family_mu_norm(const qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.mu().l(n); });
}

qo_status qo_family_tau(const qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.tau_n(n); });
}

qo_status qo_family_b_row(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] {
    const std::vector<double>& row = fam->fam.b_row(n);
    std::memcpy(out, row.data(), row.size() * sizeof(double));
  });
}

qo_status qo_family_qhat_coeffs(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] {
    const qortho::Polynomial<double> q = fam->fam.qhat_poly(n);
    for (int k = 0; k <= n; ++k) out[k] = q.coeff(k);
  });
}

qo_status qo_family_q_coeffs(qo_family* fam, int n, double* out_re,
                             double* out_im) {
  if (!fam || !out_re || !out_im) return bad_arg("null argument");
  return wrap([&] {
    const qortho::Polynomial<cd> q = fam->fam.q_poly(n);
    for (int k = 0; k <= n; ++k) {
      out_re[k] = q.coeff(k).real();
      out_im[k] = q.coeff(k).imag();
    }
  });
}

qo_status qo_family_eval(qo_family* fam, int n, int kind, double z_re,
                         double z_im, int deriv, double* out_re,
                         double* out_im, double* out_exp) {
  if (!fam || !out_re || !out_im || !out_exp) return bad_arg("null argument");
  if (kind < 0 || kind > 2) return bad_arg("kind must be 0 (Qhat), 1 (L), 2 (P)");
  if (deriv < 0 || deriv > 2) return bad_arg("deriv must be 0..2");
  return wrap([&] {
    const cd z(z_re, z_im);
    qortho::Scaled3 v;
    if (kind == 0)
      v = fam->fam.qhat_values(n, z);
    else if (kind == 1)
      v = fam->fam.L_values(n, z);
    else
      v = fam->fam.p_values(n, z);
    *out_re = v.v[static_cast<std::size_t>(deriv)].real();
    *out_im = v.v[static_cast<std::size_t>(deriv)].imag();
    *out_exp = v.exponent;
  });
}

qo_status qo_family_q_eval(qo_family* fam, int n, double z_re, double z_im,
                           double* out_re, double* out_im, double* out_exp) {
  if (!fam || !out_re || !out_im || !out_exp) return bad_arg("null argument");
  return wrap([&] {
    const qortho::ScaledValue v = fam->fam.q_value(n, cd(z_re, z_im));
    *out_re = v.v.real();
    *out_im = v.v.imag();
    *out_exp = v.exponent;
  });
}

qo_status qo_family_ode_residual(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.ode_residual(n); });
}

qo_status qo_family_orthogonality_residual(qo_family* fam, int n,
                                           double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.orthogonality_residual(n); });
}

qo_status qo_family_tail_residual(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.tail_residual(n); });
}

qo_status qo_family_existence(qo_family* fam, int n, int* exists,
                              double* residual, double* threshold) {
  if (!fam || !exists) return bad_arg("null argument");
  return wrap([&] {
    const qortho::ExistenceResult r = fam->fam.existence_check(n);
    *exists = r.exists ? 1 : 0;
    if (residual) *residual = r.residual;
    if (threshold) *threshold = r.threshold;
  });
}

qo_status qo_family_low_moment_residual(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.low_moment_residual(n); });
}

qo_status qo_family_rho_expansion_residual(qo_family* fam, int n,
                                           double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] { *out = fam->fam.rho_expansion_residual(n); });
}

qo_status qo_family_theta(qo_family* fam, int n, double* theta) {
  if (!fam || !theta) return bad_arg("null argument");
  return wrap([&] {
    const qortho::ThetaTable t =
        fam->fam.theta_coeffs(n, fam->fam.default_primitive());
    std::memcpy(theta, t.theta.data(), t.theta.size() * sizeof(double));
  });
}

qo_status qo_family_recurrence_residual(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] {
    const qortho::ThetaTable t =
        fam->fam.theta_coeffs(n, fam->fam.default_primitive());
    *out = fam->fam.recurrence_residual(n, t);
  });
}

qo_status qo_family_structure_window(qo_family* fam, int n, double* outside,
                                     double* mismatch_a, double* mismatch_b) {
  if (!fam || !outside || !mismatch_a || !mismatch_b)
    return bad_arg("null argument");
  return wrap([&] {
    const qortho::StructureReport r = fam->fam.structure_identity_check(n);
    *outside = r.outside_residual;
    *mismatch_a = r.mismatch_a;
    *mismatch_b = r.mismatch_b;
  });
}

qo_status qo_family_corrupt_b(qo_family* fam, int n, int k, double delta) {
  if (!fam) return bad_arg("null family");
  return wrap([&] { fam->fam.corrupt_b(n, k, delta); });
}

/* ---- verification sweep ------------------------------------------------ */

qo_status qo_verify(qo_family* fam, const qo_verify_options* opts,
                    qo_check_result* out, int capacity, int* count) {
  if (!fam || !out || !count) return bad_arg("null argument");
  if (capacity < 0) return bad_arg("negative capacity");
  return wrap([&] {
    qortho::VerifyOptions vo;
    if (opts) {
      vo.n_max = opts->n_max;
      vo.tol_ode = opts->tol_ode;
      vo.tol_orthogonality = opts->tol_orthogonality;
      vo.tol_tail = opts->tol_tail;
      vo.tol_recurrence = opts->tol_recurrence;
      vo.tol_recurrence_exact = opts->tol_recurrence_exact;
      vo.tol_window = opts->tol_window;
      vo.interlacing = opts->interlacing != 0;
    }
    const std::vector<qortho::CheckResult> checks =
        qortho::run_verify(fam->fam, vo);
    *count = static_cast<int>(checks.size());
    const int limit = std::min(capacity, *count);
    for (int i = 0; i < limit; ++i) {
      qo_check_result& c = out[i];
      std::snprintf(c.name, sizeof(c.name), "%s", checks[i].name.c_str());
      c.applicable = checks[i].applicable ? 1 : 0;
      c.pass = checks[i].pass ? 1 : 0;
      c.worst = checks[i].worst;
      c.tolerance = checks[i].tolerance;
      std::snprintf(c.detail, sizeof(c.detail), "%s",
                    checks[i].detail.c_str());
    }
  });
}

/* ---- asymptotics ------------------------------------------------------ */

qo_status qo_phi(double z_re, double z_im, double* out_re, double* out_im) {
  if (!out_re || !out_im) return bad_arg("null argument");
  const cd v = qortho::phi_map(cd(z_re, z_im));
  *out_re = v.real();
  *out_im = v.imag();
  return QO_OK;
}

qo_status qo_geometry(double zeta_re, double zeta_im, double* eta,
                      double* delta, double* big_delta) {
  if (!eta || !delta || !big_delta) return bad_arg("null argument");
  const qortho::Geometry g = qortho::geometry(cd(zeta_re, zeta_im));
  *eta = g.eta;
  *delta = g.delta;
  *big_delta = g.Delta;
  return QO_OK;
}

qo_status qo_ellipse_points(double zeta_re, double zeta_im, int count,
                            double* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] {
    const auto pts = qortho::ellipse_points(cd(zeta_re, zeta_im), count);
    for (int i = 0; i < count; ++i) {
      out[2 * i] = pts[static_cast<std::size_t>(i)].real();
      out[2 * i + 1] = pts[static_cast<std::size_t>(i)].imag();
    }
  });
}

qo_status qo_szego_phi(const qo_measure* meas, double z_re, double z_im,
                       double* out_re, double* out_im) {
  if (!meas || !out_re || !out_im) return bad_arg("null argument");
  return wrap([&] {
    const cd v = qortho::szego_Phi(meas->meas, cd(z_re, z_im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

qo_status qo_phi_m_constant(const qo_measure* meas, double* out) {
  if (!meas || !out) return bad_arg("null argument");
  return wrap([&] { *out = qortho::phi_m_constant(meas->meas); });
}

qo_status qo_exterior_limit(const qo_measure* meas, double z_re, double z_im,
                            double* out_re, double* out_im) {
  if (!meas || !out_re || !out_im) return bad_arg("null argument");
  return wrap([&] {
    const cd v = qortho::exterior_ratio_limit(meas->meas, cd(z_re, z_im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

qo_status qo_interior_limit(const qo_measure* meas, double zeta_re,
                            double zeta_im, double* out_re, double* out_im) {
  if (!meas || !out_re || !out_im) return bad_arg("null argument");
  return wrap([&] {
    const cd v = qortho::interior_ratio_limit(meas->meas, cd(zeta_re, zeta_im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

qo_status qo_ratio_diagnostic(qo_family* fam, const int* ns, int count,
                              double z_re, double z_im, double* out) {
  if (!fam || !ns || !out || count < 1) return bad_arg("null argument");
  return wrap([&] {
    const std::vector<int> nvec(ns, ns + count);
    const auto rows = qortho::ratio_diagnostic(fam->fam, nvec, cd(z_re, z_im));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double* r = out + 12 * i;
      r[0] = rows[i].qhat_ratio.real();
      r[1] = rows[i].qhat_ratio.imag();
      r[2] = rows[i].err_qhat;
      r[3] = rows[i].q_ratio.real();
      r[4] = rows[i].q_ratio.imag();
      r[5] = rows[i].err_q;
      r[6] = rows[i].interior_ratio.real();
      r[7] = rows[i].interior_ratio.imag();
      r[8] = rows[i].err_interior;
      r[9] = rows[i].exterior_applicable ? 1.0 : 0.0;
      r[10] = rows[i].interior_applicable ? 1.0 : 0.0;
      r[11] = 0.0;
    }
  });
}

qo_status qo_nth_root_diagnostic(qo_family* fam, const int* ns, int count,
                                 double z_re, double z_im, double* out) {
  if (!fam || !ns || !out || count < 1) return bad_arg("null argument");
  return wrap([&] {
    const std::vector<int> nvec(ns, ns + count);
    const auto rows =
        qortho::nth_root_diagnostic(fam->fam, nvec, cd(z_re, z_im));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out[3 * i] = rows[i].value;
      out[3 * i + 1] = rows[i].target;
      out[3 * i + 2] = rows[i].abs_error;
    }
  });
}

qo_status qo_zero_report(qo_family* fam, int n, double band, unsigned seed,
                         double* zeros_re, double* zeros_im, int* cls,
                         int* counts, double* stats) {
  if (!fam || !zeros_re || !zeros_im || !cls || !counts || !stats)
    return bad_arg("null argument");
  return wrap([&] {
    const qortho::ZeroReport rep =
        qortho::zero_accumulation_report(fam->fam, n, band, seed);
    if (!rep.roots_converged)
      qortho::fail(ErrorCode::NonConvergence, "zero iteration did not settle");
    for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
      zeros_re[i] = rep.zeros[i].real();
      zeros_im[i] = rep.zeros[i].imag();
      cls[i] = static_cast<int>(rep.cls[i]);
    }
    counts[0] = rep.count_interval;
    counts[1] = rep.count_ellipse;
    counts[2] = rep.count_stray;
    stats[0] = rep.max_abs;
    stats[1] = rep.radius_bound;
    stats[2] = rep.min_gap;
    stats[3] = rep.max_stray_distance;
  });
}

qo_status qo_arcsine_distance(qo_family* fam, int n, double* out) {
  if (!fam || !out) return bad_arg("null argument");
  return wrap([&] {
    *out = qortho::arcsine_distance(fam->fam.qhat_real_zeros(n));
  });
}

qo_status qo_interlacing(qo_family* fam, int n, int* applicable,
                         int* interlaced, double* min_separation) {
  if (!fam || !applicable || !interlaced) return bad_arg("null argument");
  return wrap([&] {
    const qortho::InterlacingReport r = qortho::interlacing_check(fam->fam, n);
    *applicable = r.applicable ? 1 : 0;
    *interlaced = r.interlaced ? 1 : 0;
    if (min_separation) *min_separation = r.min_separation;
  });
}

/* ---- flow field ------------------------------------------------------- */

qo_status qo_flow_create(qo_family* fam, int n, int exploratory,
                         qo_flow** out) {
  if (!fam || !out) return bad_arg("null argument");
  *out = nullptr;
  return wrap([&] {
    *out = new qo_flow{fam, qortho::FlowField(fam->fam, n, exploratory != 0)};
  });
}

void qo_flow_destroy(qo_flow* flow) { delete flow; }

qo_status qo_flow_counts(const qo_flow* flow, int* n_sources,
                         int* n_stagnation) {
  if (!flow || !n_sources || !n_stagnation) return bad_arg("null argument");
  *n_sources = static_cast<int>(flow->flow.sources().size());
  *n_stagnation = static_cast<int>(flow->flow.stagnation().size());
  return QO_OK;
}

qo_status qo_flow_sources(const qo_flow* flow, double* out) {
  if (!flow || !out) return bad_arg("null argument");
  const auto& s = flow->flow.sources();
  std::memcpy(out, s.data(), s.size() * sizeof(double));
  return QO_OK;
}

qo_status qo_flow_stagnation(const qo_flow* flow, double* out) {
  if (!flow || !out) return bad_arg("null argument");
  const auto& s = flow->flow.stagnation();
  std::memcpy(out, s.data(), s.size() * sizeof(double));
  return QO_OK;
}

qo_status qo_flow_velocity(const qo_flow* flow, double z_re, double z_im,
                           double* v_re, double* v_im) {
  if (!flow || !v_re || !v_im) return bad_arg("null argument");
  return wrap([&] {
    const cd v = flow->flow.velocity(cd(z_re, z_im));
    *v_re = v.real();
    *v_im = v.imag();
  });
}

qo_status qo_flow_far_field(const qo_flow* flow, double* out) {
  if (!flow || !out) return bad_arg("null argument");
  return wrap([&] { *out = flow->flow.far_field_coefficient(); });
}

qo_status qo_flow_residue(const qo_flow* flow, int i, double* re, double* im) {
  if (!flow || !re || !im) return bad_arg("null argument");
  return wrap([&] {
    const cd v = flow->flow.residue_at_source(i);
    *re = v.real();
    *im = v.imag();
  });
}

qo_status qo_flow_stagnation_check(const qo_flow* flow, double* max_speed,
                                   double* median, double* ratio) {
  if (!flow || !max_speed || !median || !ratio) return bad_arg("null argument");
  return wrap([&] {
    const qortho::StagnationCheck c = flow->flow.stagnation_check();
    *max_speed = c.max_speed_at_stagnation;
    *median = c.grid_median_speed;
    *ratio = c.ratio;
  });
}

qo_status qo_flow_sample(const qo_flow* flow, double re0, double re1, int nre,
                         double im0, double im1, int nim, double* out) {
  if (!flow || !out) return bad_arg("null argument");
  return wrap([&] {
    const auto samples = flow->flow.sample_field(re0, re1, nre, im0, im1, nim);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      double* r = out + 5 * i;
      r[0] = samples[i].re;
      r[1] = samples[i].im;
      if (samples[i].valid) {
        r[2] = samples[i].v.real();
        r[3] = samples[i].v.imag();
        r[4] = std::abs(samples[i].v);
      } else {
        r[2] = r[3] = r[4] = nan;
      }
    }
  });
}

qo_status qo_flow_cross_check(const qo_flow* flow, double* out) {
  if (!flow || !out) return bad_arg("null argument");
  return wrap([&] { *out = flow->flow.cross_check(); });
}

qo_status qo_flow_numerator_roots(const qo_flow* flow, double* roots,
                                  int* n_roots, double* unmatched,
                                  int* n_unmatched) {
  if (!flow || !roots || !n_roots || !unmatched || !n_unmatched)
    return bad_arg("null argument");
  return wrap([&] {
    const qortho::NumeratorRootReport rep = flow->flow.numerator_root_report();
    std::memcpy(roots, rep.roots.data(), rep.roots.size() * sizeof(double));
    *n_roots = static_cast<int>(rep.roots.size());
    std::memcpy(unmatched, rep.unmatched.data(),
                rep.unmatched.size() * sizeof(double));
    *n_unmatched = static_cast<int>(rep.unmatched.size());
  });
}

}  // extern "C"
