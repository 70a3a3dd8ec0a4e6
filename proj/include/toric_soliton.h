/* toric_soliton: numerical Kahler-Ricci soliton data for toric fibers over
 * flag-manifold bases.
 *
 * The library decides the Fano condition for a moment polytope with affine
 * base weight forms, computes the soliton vector (the unique zero of the
 * weighted barycenter), the normalization constant, and for 1-D fibers the
 * solitonic metric profile with a certified residual.
 *
 * All handles are opaque; every entry point returns a ts_status and writes
 * results through out-parameters. On failure, ts_last_error_message() gives
 * a thread-local description of the most recent error.
 */
#ifndef TORIC_SOLITON_H
#define TORIC_SOLITON_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_ERR_INVALID_ARGUMENT = 1,
  TS_ERR_DIMENSION_MISMATCH = 2,
  TS_ERR_UNBOUNDED = 3,
  TS_ERR_DEGENERATE = 4,
  TS_ERR_INCONSISTENT = 5,
  TS_ERR_NON_CONVERGENT = 6,
  TS_ERR_NON_POSITIVE_WEIGHT = 7,
  TS_ERR_EMPTY_BOX = 8,
  TS_ERR_UNKNOWN_PRESET = 9,
  TS_ERR_NOT_FANO = 10,
  TS_ERR_ORIGIN_NOT_INTERIOR = 11,
  TS_ERR_MAX_ITERATIONS = 12,
  TS_ERR_CLOSURE_FAILURE = 13,
  TS_ERR_NON_POSITIVE_PROFILE = 14,
  TS_ERR_GRADIENT_OUT_OF_POLYTOPE = 15,
  TS_ERR_SINGULAR_HESSIAN = 16,
  TS_ERR_PARSE = 17,
  TS_ERR_SCHEMA = 18,
  TS_ERR_IO = 19,
  TS_ERR_INTERNAL = 20
} ts_status;

typedef struct ts_polytope ts_polytope;
typedef struct ts_forms ts_forms;
typedef struct ts_profile ts_profile;
typedef struct ts_problem ts_problem;
typedef struct ts_report ts_report;

/* Library version string ("MAJOR.MINOR.PATCH"). */
const char* ts_version(void);

/* Report schema identifier emitted in every run report. */
const char* ts_report_schema(void);

/* Thread-local message for the last failing call in this thread. */
const char* ts_last_error_message(void);

/* ---- polytope ---------------------------------------------------------- */

/* Builds and validates a moment polytope from n_vertices points (row-major,
 * dim doubles each) and n_facets inequalities normal.x + offset >= 0.
 * Validation checks boundedness, full dimension and that the vertex hull
 * equals the facet intersection. */
ts_status ts_polytope_create(int dim, const double* vertices, int n_vertices,
                             const double* facet_normals, const double* facet_offsets,
                             int n_facets, ts_polytope** out);
void ts_polytope_destroy(ts_polytope* p);
int ts_polytope_dim(const ts_polytope* p);
int ts_polytope_num_vertices(const ts_polytope* p);
int ts_polytope_num_facets(const ts_polytope* p);
ts_status ts_polytope_volume(const ts_polytope* p, double* out);
/* 1 if the origin lies strictly inside, else 0. */
int ts_polytope_origin_interior(const ts_polytope* p);

/* ---- base weight forms -------------------------------------------------- */

/* Raw base weights (a_alpha vectors, b_alpha offsets); the stored affine
 * forms are L(x) = -a.x/(4 pi) + b. n_forms may be 0 (point base, P == 1). */
ts_status ts_forms_create(int dim, const double* a, const double* b, int n_forms,
                          ts_forms** out);
/* Registry presets: "point", "rank1-single-root", "cp2-base". */
ts_status ts_forms_create_preset(const char* name, ts_forms** out);
void ts_forms_destroy(ts_forms* w);
int ts_forms_dim(const ts_forms* w);
int ts_forms_count(const ts_forms* w);
/* Post-conversion affine data of form i: c (dim doubles) and d. */
ts_status ts_forms_get(const ts_forms* w, int i, double* c, double* d);

/* ---- Fano check --------------------------------------------------------- */

/* margin = min over forms and vertices of L(vertex); is_fano = margin > 0.
 * For an empty form set is_fano = 1 and margin = +inf. Violating
 * (form, vertex) pairs are written to the index buffers (capacity cap);
 * *n_violations reports the total count even when it exceeds cap. */
ts_status ts_fano_check(const ts_polytope* p, const ts_forms* w, int* is_fano,
                        double* margin, int* n_violations, int* violation_forms,
                        int* violation_vertices, int cap);

/* ---- moments and Monte-Carlo oracle ------------------------------------ */

/* Weighted moments I_k = int x^(k) exp(lambda.x) P(x) dx for k = 0, 1, 2.
 * i1 needs dim doubles, i2 dim*dim (row-major, symmetric). Degree-escalated
 * simplex cubature; every component is converged to rel_tol (pass 0 for the
 * default 1e-12). degree_cap <= 0 selects the default cap 25.
 * require_positive enforces P > 0 on the polytope. */
ts_status ts_weighted_moments(const ts_polytope* p, const ts_forms* w,
                              const double* lambda, double rel_tol, int degree_cap,
                              int require_positive, double* i0, double* i1, double* i2);

typedef double (*ts_integrand_fn)(const double* x, int dim, void* ctx);

/* Rejection-sampled integral of f over the polytope from its bounding box;
 * deterministic per seed. stderr_out gets the volume-scaled standard error. */
ts_status ts_mc_oracle(const ts_polytope* p, ts_integrand_fn f, void* ctx,
                       long long n, uint64_t seed, double* estimate, double* stderr_out);

/* ---- soliton data ------------------------------------------------------- */

/* Weighted barycenter at lambda = 0 (dim doubles). */
ts_status ts_futaki_vector(const ts_polytope* p, const ts_forms* w, double* out);

/* Damped Newton for the soliton vector; writes lambda (dim), the
 * normalization constant, the Futaki vector (dim), the iteration count and
 * the final residual in the diameter-normalized metric. tol <= 0 selects the
 * default 1e-10. Any output pointer may be NULL. */
ts_status ts_soliton_solve(const ts_polytope* p, const ts_forms* w, double tol,
                           double* lambda, double* c_lambda, double* futaki,
                           int* iterations, double* residual_norm);

/* log(I0(0) / I0(lambda)). */
ts_status ts_normalization_constant(const ts_polytope* p, const ts_forms* w,
                                    const double* lambda, double* out);

/* ---- 1-D metric profile ------------------------------------------------- */

/* Solves the profile equation (P phi)' + lambda P phi + x P = 0 on
 * [x_min, x_max] with n_grid cells and certifies the terminal closure
 * |psi(x_max)| <= closure_rel_tol * max psi (pass <= 0 for the default
 * 1e-9). */
ts_status ts_profile_solve(double x_min, double x_max, const ts_forms* w,
                           double lambda, double c_lambda, int n_grid,
                           double closure_rel_tol, ts_profile** out);
void ts_profile_destroy(ts_profile* p);
/* Number of grid nodes (n_grid + 1). */
int ts_profile_size(const ts_profile* p);
double ts_profile_lambda(const ts_profile* p);
double ts_profile_c_lambda(const ts_profile* p);
double ts_profile_closure_defect(const ts_profile* p);
double ts_profile_max_psi(const ts_profile* p);
/* Borrowed pointers into the handle; valid until ts_profile_destroy. u and t
 * are +/-inf at the endpoints, where the fiber degenerates. */
ts_status ts_profile_data(const ts_profile* p, const double** x, const double** phi,
                          const double** u, const double** t);

/* One-sided slopes of phi at the ends against the analytic values -x_min and
 * -x_max; pass = both within 10/n_grid relative. */
ts_status ts_boundary_slope_check(const ts_profile* p, double* slope_min,
                                  double* slope_max, double* expected_min,
                                  double* expected_max, int* pass);

/* Log-form residual of the reduced equation on the interior collar
 * [x_min + 3h, x_max - 3h]. */
ts_status ts_ma_residual_1d(const ts_profile* p, const ts_forms* w, double* sup_norm,
                            double* l2_norm, double* worst_x);

/* General-m residual for a potential sampled on a uniform box grid in fiber
 * coordinates: shape lists nodes per axis, values is row-major with the last
 * axis fastest. worst_point needs dim doubles. */
ts_status ts_ma_residual_grid(int dim, const int* shape, const double* origin,
                              const double* spacing, const double* values,
                              const double* lambda, double c_lambda, const ts_forms* w,
                              const ts_polytope* p, double* sup_norm, double* l2_norm,
                              double* worst_point);

/* ---- problem files and pipeline ----------------------------------------- */

/* Parses and validates a problem file (JSON: name, dim, polytope, forms,
 * options). Schema violations are reported all at once. */
ts_status ts_problem_load(const char* path, ts_problem** out);
ts_status ts_problem_load_string(const char* text, const char* fallback_name,
                                 ts_problem** out);
void ts_problem_destroy(ts_problem* p);
const char* ts_problem_name(const ts_problem* p);
int ts_problem_dim(const ts_problem* p);
/* Canonicalized spec document (JSON, sorted keys, normalized numbers);
 * borrowed pointer, valid until the problem is destroyed or re-canonicalized. */
const char* ts_problem_canonical(ts_problem* p);
/* Stable digest of the canonical spec. */
const char* ts_problem_input_hash(ts_problem* p);

/* Option overrides applied before a run. */
void ts_problem_set_tol(ts_problem* p, double tol);
void ts_problem_set_quad_degree_cap(ts_problem* p, int cap);
void ts_problem_set_n_grid(ts_problem* p, int n_grid);
void ts_problem_set_seed(ts_problem* p, uint64_t seed);
void ts_problem_set_oracle(ts_problem* p, int enable);

/* Runs the full pipeline. Always yields a report handle (possibly recording
 * a stage error); the return status reflects report construction itself. */
ts_status ts_run(const ts_problem* p, ts_report** out);
void ts_report_destroy(ts_report* r);
/* Full report document (JSON); borrowed pointer. */
const char* ts_report_json(ts_report* r);
const char* ts_report_verdict(const ts_report* r);
/* Exit-code contract: 0 success, 2 non-Fano verdict, 1 stage error. */
int ts_report_exit_code(const ts_report* r);
/* Writes report/profile files into out_dir; format is "report", "csv" or
 * "both". */
ts_status ts_report_write(const ts_report* r, const char* out_dir, const char* format);

#ifdef __cplusplus
}
#endif

#endif /* TORIC_SOLITON_H */
