#include "toric_soliton.h"

#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "core/forms.hpp"
#include "core/pipeline.hpp"
#include "core/polytope.hpp"
#include "core/presets.hpp"
#include "core/problem.hpp"
#include "core/profile.hpp"
#include "core/quadrature.hpp"
#include "core/soliton.hpp"

using namespace toric;

namespace {

thread_local std::string g_last_error;

ts_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return TS_ERR_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return TS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::unbounded: return TS_ERR_UNBOUNDED;
    case ErrorCode::degenerate: return TS_ERR_DEGENERATE;
    case ErrorCode::inconsistent: return TS_ERR_INCONSISTENT;
    case ErrorCode::non_convergent: return TS_ERR_NON_CONVERGENT;
    case ErrorCode::non_positive_weight: return TS_ERR_NON_POSITIVE_WEIGHT;
    case ErrorCode::empty_box: return TS_ERR_EMPTY_BOX;
    case ErrorCode::unknown_preset: return TS_ERR_UNKNOWN_PRESET;
    case ErrorCode::not_fano: return TS_ERR_NOT_FANO;
    case ErrorCode::origin_not_interior: return TS_ERR_ORIGIN_NOT_INTERIOR;
    case ErrorCode::max_iterations: return TS_ERR_MAX_ITERATIONS;
    case ErrorCode::closure_failure: return TS_ERR_CLOSURE_FAILURE;
    case ErrorCode::non_positive_profile: return TS_ERR_NON_POSITIVE_PROFILE;
    case ErrorCode::gradient_out_of_polytope: return TS_ERR_GRADIENT_OUT_OF_POLYTOPE;
    case ErrorCode::singular_hessian: return TS_ERR_SINGULAR_HESSIAN;
    case ErrorCode::parse_error: return TS_ERR_PARSE;
    case ErrorCode::schema_error: return TS_ERR_SCHEMA;
    case ErrorCode::io_error: return TS_ERR_IO;
  }
  return TS_ERR_INTERNAL;
}

template <typename F>
ts_status guarded(F&& f) {
  try {
    f();
    return TS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TS_ERR_INTERNAL;
  }
}

}  // namespace

struct ts_polytope {
  Polytope impl;
};
struct ts_forms {
  WeightFormSet impl;
};
struct ts_profile {
  Profile1D impl;
};
struct ts_problem {
  ProblemSpec impl;
  std::string canonical;
  std::string hash;
};
struct ts_report {
  RunReport impl;
  std::string json_text;
};

extern "C" {

const char* ts_version(void) { return kArtifactVersion; }
const char* ts_report_schema(void) { return kReportSchema; }
const char* ts_last_error_message(void) { return g_last_error.c_str(); }

ts_status ts_polytope_create(int dim, const double* vertices, int n_vertices,
                             const double* facet_normals, const double* facet_offsets,
                             int n_facets, ts_polytope** out) {
  if (!vertices || !facet_normals || !facet_offsets || !out || dim < 1 ||
      n_vertices < 1 || n_facets < 1) {
    g_last_error = "null or malformed arguments";
    return TS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<Vec> vs(n_vertices, Vec(dim));
    for (int i = 0; i < n_vertices; ++i)
      for (int k = 0; k < dim; ++k) vs[i][k] = vertices[i * dim + k];
    std::vector<Facet> fs(n_facets);
    for (int i = 0; i < n_facets; ++i) {
      fs[i].normal.assign(facet_normals + i * dim, facet_normals + (i + 1) * dim);
      fs[i].offset = facet_offsets[i];
    }
    *out = new ts_polytope{Polytope::validate(std::move(vs), std::move(fs))};
  });
}

void ts_polytope_destroy(ts_polytope* p) { delete p; }
int ts_polytope_dim(const ts_polytope* p) { return p ? p->impl.dim() : 0; }
int ts_polytope_num_vertices(const ts_polytope* p) {
  return p ? (int)p->impl.vertices().size() : 0;
}
int ts_polytope_num_facets(const ts_polytope* p) {
  return p ? (int)p->impl.facets().size() : 0;
}
ts_status ts_polytope_volume(const ts_polytope* p, double* out) {
  if (!p || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = p->impl.volume(); });
}
int ts_polytope_origin_interior(const ts_polytope* p) {
  return p && p->impl.origin_interior() ? 1 : 0;
}

ts_status ts_forms_create(int dim, const double* a, const double* b, int n_forms,
                          ts_forms** out) {
  if (!out || dim < 1 || n_forms < 0 || (n_forms > 0 && (!a || !b))) {
    g_last_error = "null or malformed arguments";
    return TS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<Vec> raw_a(n_forms, Vec(dim));
    Vec raw_b(n_forms);
    for (int i = 0; i < n_forms; ++i) {
      for (int k = 0; k < dim; ++k) raw_a[i][k] = a[i * dim + k];
      raw_b[i] = b[i];
    }
    *out = new ts_forms{WeightFormSet::from_raw(dim, raw_a, raw_b)};
  });
}

ts_status ts_forms_create_preset(const char* name, ts_forms** out) {
  if (!name || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ts_forms{load_base_preset(name)}; });
}

void ts_forms_destroy(ts_forms* w) { delete w; }
int ts_forms_dim(const ts_forms* w) { return w ? w->impl.dim() : 0; }
int ts_forms_count(const ts_forms* w) { return w ? w->impl.count() : 0; }

ts_status ts_forms_get(const ts_forms* w, int i, double* c, double* d) {
  if (!w || i < 0 || i >= w->impl.count()) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const auto& f = w->impl.forms()[i];
    if (c)
      for (int k = 0; k < w->impl.dim(); ++k) c[k] = f.c[k];
    if (d) *d = f.d;
  });
}

ts_status ts_fano_check(const ts_polytope* p, const ts_forms* w, int* is_fano,
                        double* margin, int* n_violations, int* violation_forms,
                        int* violation_vertices, int cap) {
  if (!p || !w) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    FanoReport r = fano_check(p->impl, w->impl);
    if (is_fano) *is_fano = r.is_fano ? 1 : 0;
    if (margin) *margin = r.margin;
    if (n_violations) *n_violations = (int)r.violations.size();
    int n = std::min((int)r.violations.size(), cap);
    for (int i = 0; i < n; ++i) {
      if (violation_forms) violation_forms[i] = r.violations[i].form_index;
      if (violation_vertices) violation_vertices[i] = r.violations[i].vertex_index;
    }
  });
}

ts_status ts_weighted_moments(const ts_polytope* p, const ts_forms* w,
                              const double* lambda, double rel_tol, int degree_cap,
                              int require_positive, double* i0, double* i1, double* i2) {
  if (!p || !w || !lambda) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    int m = p->impl.dim();
    MomentOptions opt;
    if (rel_tol > 0.0) opt.rel_tol = rel_tol;
    if (degree_cap > 0) opt.degree_cap = degree_cap;
    opt.require_positive = require_positive != 0;
    MomentTensor t = weighted_moments(p->impl, w->impl, Vec(lambda, lambda + m), opt);
    if (i0) *i0 = t.i0;
    if (i1)
      for (int k = 0; k < m; ++k) i1[k] = t.i1[k];
    if (i2)
      for (int k = 0; k < m * m; ++k) i2[k] = t.i2[k];
  });
}

ts_status ts_mc_oracle(const ts_polytope* p, ts_integrand_fn f, void* ctx,
                       long long n, uint64_t seed, double* estimate, double* stderr_out) {
  if (!p || !f) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    int m = p->impl.dim();
    McResult r = mc_oracle(p->impl,
                           [&](const Vec& x) { return f(x.data(), m, ctx); }, n, seed);
    if (estimate) *estimate = r.estimate;
    if (stderr_out) *stderr_out = r.stderr_est;
  });
}

ts_status ts_futaki_vector(const ts_polytope* p, const ts_forms* w, double* out) {
  if (!p || !w || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Vec f = futaki_vector(p->impl, w->impl);
    for (int k = 0; k < p->impl.dim(); ++k) out[k] = f[k];
  });
}

ts_status ts_soliton_solve(const ts_polytope* p, const ts_forms* w, double tol,
                           double* lambda, double* c_lambda, double* futaki,
                           int* iterations, double* residual_norm) {
  if (!p || !w) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    SolitonOptions opt;
    if (tol > 0.0) opt.tol = tol;
    SolitonResult r = solve_soliton_vector(p->impl, w->impl, opt);
    int m = p->impl.dim();
    if (lambda)
      for (int k = 0; k < m; ++k) lambda[k] = r.lambda[k];
    if (c_lambda) *c_lambda = r.c_lambda;
    if (futaki)
      for (int k = 0; k < m; ++k) futaki[k] = r.futaki[k];
    if (iterations) *iterations = r.iterations;
    if (residual_norm) *residual_norm = r.residual_norm;
  });
}

ts_status ts_normalization_constant(const ts_polytope* p, const ts_forms* w,
                                    const double* lambda, double* out) {
  if (!p || !w || !lambda || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    int m = p->impl.dim();
    *out = normalization_constant(p->impl, w->impl, Vec(lambda, lambda + m));
  });
}

ts_status ts_profile_solve(double x_min, double x_max, const ts_forms* w,
                           double lambda, double c_lambda, int n_grid,
                           double closure_rel_tol, ts_profile** out) {
  if (!w || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    double ctol = closure_rel_tol > 0.0 ? closure_rel_tol : 1e-9;
    *out = new ts_profile{
        solve_profile(x_min, x_max, w->impl, lambda, c_lambda, n_grid, ctol)};
  });
}

void ts_profile_destroy(ts_profile* p) { delete p; }
int ts_profile_size(const ts_profile* p) { return p ? (int)p->impl.x.size() : 0; }
double ts_profile_lambda(const ts_profile* p) { return p ? p->impl.lambda : 0.0; }
double ts_profile_c_lambda(const ts_profile* p) { return p ? p->impl.c_lambda : 0.0; }
double ts_profile_closure_defect(const ts_profile* p) {
  return p ? p->impl.closure_defect : 0.0;
}
double ts_profile_max_psi(const ts_profile* p) { return p ? p->impl.max_psi : 0.0; }

ts_status ts_profile_data(const ts_profile* p, const double** x, const double** phi,
                          const double** u, const double** t) {
  if (!p) return TS_ERR_INVALID_ARGUMENT;
  if (x) *x = p->impl.x.data();
  if (phi) *phi = p->impl.phi.data();
  if (u) *u = p->impl.u.data();
  if (t) *t = p->impl.t.data();
  return TS_OK;
}

ts_status ts_boundary_slope_check(const ts_profile* p, double* slope_min,
                                  double* slope_max, double* expected_min,
                                  double* expected_max, int* pass) {
  if (!p) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    SlopeCheck s = boundary_slope_check(p->impl);
    if (slope_min) *slope_min = s.slope_min;
    if (slope_max) *slope_max = s.slope_max;
    if (expected_min) *expected_min = s.expected_min;
    if (expected_max) *expected_max = s.expected_max;
    if (pass) *pass = s.pass ? 1 : 0;
  });
}

ts_status ts_ma_residual_1d(const ts_profile* p, const ts_forms* w, double* sup_norm,
                            double* l2_norm, double* worst_x) {
  if (!p || !w) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    ResidualReport r = ma_residual_1d(p->impl, w->impl);
    if (sup_norm) *sup_norm = r.sup_norm;
    if (l2_norm) *l2_norm = r.l2_norm;
    if (worst_x) *worst_x = r.worst_point[0];
  });
}

ts_status ts_ma_residual_grid(int dim, const int* shape, const double* origin,
                              const double* spacing, const double* values,
                              const double* lambda, double c_lambda, const ts_forms* w,
                              const ts_polytope* p, double* sup_norm, double* l2_norm,
                              double* worst_point) {
  if (dim < 1 || !shape || !origin || !spacing || !values || !lambda || !w || !p)
    return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    GridField u;
    u.dim = dim;
    u.shape.assign(shape, shape + dim);
    u.origin.assign(origin, origin + dim);
    u.spacing.assign(spacing, spacing + dim);
    size_t count = 1;
    for (int k = 0; k < dim; ++k) count *= (size_t)std::max(shape[k], 0);
    u.values.assign(values, values + count);
    ResidualReport r =
        ma_residual_grid(u, Vec(lambda, lambda + dim), c_lambda, w->impl, p->impl);
    if (sup_norm) *sup_norm = r.sup_norm;
    if (l2_norm) *l2_norm = r.l2_norm;
    if (worst_point)
      for (int k = 0; k < dim; ++k) worst_point[k] = r.worst_point[k];
  });
}

ts_status ts_problem_load(const char* path, ts_problem** out) {
  if (!path || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ts_problem{parse_problem_file(path), "", ""}; });
}

ts_status ts_problem_load_string(const char* text, const char* fallback_name,
                                 ts_problem** out) {
  if (!text || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ts_problem{
        parse_problem_text(text, fallback_name ? fallback_name : "problem"), "", ""};
  });
}

void ts_problem_destroy(ts_problem* p) { delete p; }
const char* ts_problem_name(const ts_problem* p) {
  return p ? p->impl.name.c_str() : "";
}
int ts_problem_dim(const ts_problem* p) { return p ? p->impl.dim : 0; }

const char* ts_problem_canonical(ts_problem* p) {
  if (!p) return "";
  p->canonical = canonical_spec_dump(p->impl);
  return p->canonical.c_str();
}

const char* ts_problem_input_hash(ts_problem* p) {
  if (!p) return "";
  p->hash = input_hash(p->impl);
  return p->hash.c_str();
}

void ts_problem_set_tol(ts_problem* p, double tol) {
  if (p && tol > 0.0) p->impl.options.tol = tol;
}
void ts_problem_set_quad_degree_cap(ts_problem* p, int cap) {
  if (p && cap >= 5) p->impl.options.quad_degree_cap = cap;
}
void ts_problem_set_n_grid(ts_problem* p, int n_grid) {
  if (p && n_grid >= 8) p->impl.options.n_grid = n_grid;
}
void ts_problem_set_seed(ts_problem* p, uint64_t seed) {
  if (p) p->impl.options.seed = seed;
}
void ts_problem_set_oracle(ts_problem* p, int enable) {
  if (p) p->impl.options.oracle = enable != 0;
}

ts_status ts_run(const ts_problem* p, ts_report** out) {
  if (!p || !out) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ts_report{run_pipeline(p->impl), ""}; });
}

void ts_report_destroy(ts_report* r) { delete r; }

const char* ts_report_json(ts_report* r) {
  if (!r) return "";
  r->json_text = r->impl.root.dump(2);
  return r->json_text.c_str();
}

const char* ts_report_verdict(const ts_report* r) {
  return r ? r->impl.verdict.c_str() : "";
}

int ts_report_exit_code(const ts_report* r) { return r ? r->impl.exit_code : 1; }

ts_status ts_report_write(const ts_report* r, const char* out_dir, const char* format) {
  if (!r || !out_dir || !format) return TS_ERR_INVALID_ARGUMENT;
  return guarded([&] { emit_report(r->impl, out_dir, format); });
}

}  // extern "C"
