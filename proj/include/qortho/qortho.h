/* C interface to the (L, mu) orthogonal family library: opaque handles,
 * integer status codes, out-parameters. Scaled evaluations return a mantissa
 * pair (re, im) plus an exponent e, meaning value = (re + i im) * exp(e).
 * On any non-QO_OK status, qo_last_error() describes the failure for the
 * calling thread. */
#ifndef QORTHO_H
#define QORTHO_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QO_API __declspec(dllexport)
#else
#define QO_API __attribute__((visibility("default")))
#endif

typedef enum qo_status {
  QO_OK = 0,
  QO_ERR_INVALID_ARGUMENT = 1,
  QO_ERR_INVALID_MEASURE = 2,
  QO_ERR_DEGENERATE_DENOMINATOR = 3,
  QO_ERR_NONCONVERGENCE = 4,
  QO_ERR_BUDGET_EXCEEDED = 5,
  QO_ERR_BRANCH_CUT = 6,
  QO_ERR_ON_INTERVAL = 7,
  QO_ERR_NOT_APPLICABLE = 8,
  QO_ERR_PRIMITIVE_MISMATCH = 9,
  QO_ERR_POLE = 10,
  QO_ERR_INTERNAL = 11
} qo_status;

typedef struct qo_measure qo_measure;
typedef struct qo_family qo_family;
typedef struct qo_flow qo_flow;

QO_API const char* qo_version(void);
QO_API const char* qo_last_error(void);

/* ---- measure ---------------------------------------------------------- */

/* roots: m interleaved (re, im) pairs, conjugate-closed, away from [-1,1];
 * may be NULL when m = 0. */
QO_API qo_status qo_measure_create(double alpha, double beta, double rho_lead,
                                   const double* roots, int m,
                                   qo_measure** out);
QO_API void qo_measure_destroy(qo_measure* meas);
QO_API qo_status qo_measure_info(const qo_measure* meas, double* alpha,
                                 double* beta, int* m, double* rho_lead);
QO_API qo_status qo_measure_rho(const qo_measure* meas, double x, double* out);

/* ---- family ----------------------------------------------------------- */

/* zeta_seq: NULL for the constant zeta, else n_max interleaved (re, im)
 * pairs giving zeta_n for n = 1..n_max. The measure handle may be destroyed
 * afterwards; the family keeps a copy. */
QO_API qo_status qo_family_create(const qo_measure* meas, int n_max,
                                  double zeta_re, double zeta_im,
                                  const double* zeta_seq, unsigned seed,
                                  qo_family** out);
QO_API void qo_family_destroy(qo_family* fam);
QO_API qo_status qo_family_warning_count(const qo_family* fam, int* out);
QO_API const char* qo_family_warning(const qo_family* fam, int idx);

QO_API qo_status qo_family_lambda(const qo_family* fam, int n, double* out);
QO_API qo_status qo_family_zeta(const qo_family* fam, int n, double* re,
                                double* im);
QO_API qo_status qo_family_mu_recurrence(const qo_family* fam, int n,
                                         double* A, double* B);
QO_API qo_status qo_family_mu_norm(const qo_family* fam, int n, double* out);
QO_API qo_status qo_family_tau(const qo_family* fam, int n, double* out);

/* b[k] = b_{n,n-k}, k = 0..min(m,n); out must hold min(m,n)+1 values. */
QO_API qo_status qo_family_b_row(qo_family* fam, int n, double* out);

/* Ascending coefficients; out must hold n+1 values. Degree capped at 40. */
QO_API qo_status qo_family_qhat_coeffs(qo_family* fam, int n, double* out);
QO_API qo_status qo_family_q_coeffs(qo_family* fam, int n, double* out_re,
                                    double* out_im);

/* kind: 0 Qhat_n, 1 L_n, 2 P_n; deriv 0..2. Scaled result. */
QO_API qo_status qo_family_eval(qo_family* fam, int n, int kind, double z_re,
                                double z_im, int deriv, double* out_re,
                                double* out_im, double* out_exp);
QO_API qo_status qo_family_q_eval(qo_family* fam, int n, double z_re,
                                  double z_im, double* out_re, double* out_im,
                                  double* out_exp);

QO_API qo_status qo_family_ode_residual(qo_family* fam, int n, double* out);
QO_API qo_status qo_family_orthogonality_residual(qo_family* fam, int n,
                                                  double* out);
QO_API qo_status qo_family_tail_residual(qo_family* fam, int n, double* out);
QO_API qo_status qo_family_existence(qo_family* fam, int n, int* exists,
                                     double* residual, double* threshold);
QO_API qo_status qo_family_low_moment_residual(qo_family* fam, int n,
                                               double* out);
QO_API qo_status qo_family_rho_expansion_residual(qo_family* fam, int n,
                                                  double* out);

/* theta[i] = theta_{R,n,n-k} with k = i - (m+1), i = 0..2m+2, for the
 * default primitive R (R' = rho, constant 0). */
QO_API qo_status qo_family_theta(qo_family* fam, int n, double* theta);
QO_API qo_status qo_family_recurrence_residual(qo_family* fam, int n,
                                               double* out);
QO_API qo_status qo_family_structure_window(qo_family* fam, int n,
                                            double* outside,
                                            double* mismatch_a,
                                            double* mismatch_b);

/* Fault-injection hook for tests: adds delta to b_{n,n-k} in place. */
QO_API qo_status qo_family_corrupt_b(qo_family* fam, int n, int k,
                                     double delta);

/* ---- verification sweep ------------------------------------------------ */

typedef struct qo_verify_options {
  int n_max;        /* 0: the family's n_max */
  double tol_ode;
  double tol_orthogonality;
  double tol_tail;
  double tol_recurrence;
  double tol_recurrence_exact; /* m == 0, exactly banded table */
  double tol_window;
  int interlacing;  /* nonzero: include the interlacing sweep */
} qo_verify_options;

typedef struct qo_check_result {
  char name[32];
  int applicable;
  int pass;
  double worst;     /* worst measured value across the n-range */
  double tolerance;
  char detail[192];
} qo_check_result;

/* Runs the invariant suite (ode, orthogonality, b-tail, existence-flip,
 * recurrence, structure-window, interlacing). opts may be NULL for the
 * defaults. Writes up to capacity results; count gets the total emitted. */
QO_API qo_status qo_verify(qo_family* fam, const qo_verify_options* opts,
                           qo_check_result* out, int capacity, int* count);

/* ---- asymptotics ------------------------------------------------------ */

QO_API qo_status qo_phi(double z_re, double z_im, double* out_re,
                        double* out_im);
QO_API qo_status qo_geometry(double zeta_re, double zeta_im, double* eta,
                             double* delta, double* big_delta);
/* out: count interleaved (re, im) pairs. */
QO_API qo_status qo_ellipse_points(double zeta_re, double zeta_im, int count,
                                   double* out);
QO_API qo_status qo_szego_phi(const qo_measure* meas, double z_re, double z_im,
                              double* out_re, double* out_im);
QO_API qo_status qo_phi_m_constant(const qo_measure* meas, double* out);
QO_API qo_status qo_exterior_limit(const qo_measure* meas, double z_re,
                                   double z_im, double* out_re,
                                   double* out_im);
QO_API qo_status qo_interior_limit(const qo_measure* meas, double zeta_re,
                                   double zeta_im, double* out_re,
                                   double* out_im);

/* One row per n, 12 doubles each:
 * [0..1] Qhat_n(z)/P_n(z)    [2] |row0 - exterior target|
 * [3..4] Q_n(z)/P_n(z)       [5] |row3 - exterior target|
 * [6..7] Q_n(z)/P_n(zeta_n)  [8] |row6 - interior target|
 * [9] exterior applicable (0/1)   [10] interior applicable (0/1)
 * [11] reserved (0). */
QO_API qo_status qo_ratio_diagnostic(qo_family* fam, const int* ns, int count,
                                     double z_re, double z_im, double* out);
/* One row per n, 3 doubles: |Qhat_n(z)|^{1/n}, |phi(z)|/2, abs error. */
QO_API qo_status qo_nth_root_diagnostic(qo_family* fam, const int* ns,
                                        int count, double z_re, double z_im,
                                        double* out);

/* zeros_re/zeros_im/cls: n entries (cls: 0 near-interval, 1 near-ellipse,
 * 2 stray). counts: 3 ints in that order. stats: max |zero|, Delta(zeta)+1,
 * min pairwise gap, max stray distance. */
QO_API qo_status qo_zero_report(qo_family* fam, int n, double band,
                                unsigned seed, double* zeros_re,
                                double* zeros_im, int* cls, int* counts,
                                double* stats);

/* KS distance of the real zeros of Qhat_n against the arcsine law. */
QO_API qo_status qo_arcsine_distance(qo_family* fam, int n, double* out);

/* applicable: the interlacing theorem is stated for m <= 1. */
QO_API qo_status qo_interlacing(qo_family* fam, int n, int* applicable,
                                int* interlaced, double* min_separation);

/* ---- flow field ------------------------------------------------------- */

/* The family must outlive every flow handle created from it. */
QO_API qo_status qo_flow_create(qo_family* fam, int n, int exploratory,
                                qo_flow** out);
QO_API void qo_flow_destroy(qo_flow* flow);
QO_API qo_status qo_flow_counts(const qo_flow* flow, int* n_sources,
                                int* n_stagnation);
QO_API qo_status qo_flow_sources(const qo_flow* flow, double* out);
QO_API qo_status qo_flow_stagnation(const qo_flow* flow, double* out);
QO_API qo_status qo_flow_velocity(const qo_flow* flow, double z_re,
                                  double z_im, double* v_re, double* v_im);
QO_API qo_status qo_flow_far_field(const qo_flow* flow, double* out);
QO_API qo_status qo_flow_residue(const qo_flow* flow, int i, double* re,
                                 double* im);
QO_API qo_status qo_flow_stagnation_check(const qo_flow* flow,
                                          double* max_speed, double* median,
                                          double* ratio);
/* out: nre*nim rows of 5 doubles (re, im, v_re, v_im, |v|), im outer;
 * points inside the pole guard carry NaN velocity entries. */
QO_API qo_status qo_flow_sample(const qo_flow* flow, double re0, double re1,
                                int nre, double im0, double im1, int nim,
                                double* out);
QO_API qo_status qo_flow_cross_check(const qo_flow* flow, double* out);
/* roots/unmatched hold up to n doubles; counts written to the int outs. */
QO_API qo_status qo_flow_numerator_roots(const qo_flow* flow, double* roots,
                                         int* n_roots, double* unmatched,
                                         int* n_unmatched);

#ifdef __cplusplus
}
#endif

#endif /* QORTHO_H */
