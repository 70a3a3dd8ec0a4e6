#include "core/profile.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/gauss_kronrod.hpp"

namespace toric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_1d_inputs(double x_min, double x_max, const WeightFormSet& w, int n_grid) {
  if (w.dim() != 1) fail(ErrorCode::dimension_mismatch, "profile solver needs m = 1 forms");
  if (!(x_min < 0.0 && 0.0 < x_max))
    fail(ErrorCode::origin_not_interior, "interval must contain the origin strictly");
  if (n_grid < 4 || n_grid > (1 << 20))
    fail(ErrorCode::invalid_argument, "n_grid must be in [4, 2^20]");
  // Affine forms attain their extremes at the endpoints.
  for (int i = 0; i < w.count(); ++i) {
    Vec a{x_min}, b{x_max};
    if (w.eval_form(i, a) <= 0.0 || w.eval_form(i, b) <= 0.0)
      fail(ErrorCode::not_fano, "weight product is not positive on the interval");
  }
}

}  // namespace

Profile1D solve_profile(double x_min, double x_max, const WeightFormSet& w,
                        double lambda, double c_lambda, int n_grid,
                        double closure_rel_tol) {
  check_1d_inputs(x_min, x_max, w, n_grid);

  Profile1D p;
  p.x_min = x_min;
  p.x_max = x_max;
  p.lambda = lambda;
  p.c_lambda = c_lambda;
  p.n_grid = n_grid;
  int nn = n_grid + 1;
  p.spacing = (x_max - x_min) / n_grid;
  p.x.resize(nn);
  for (int i = 0; i < nn; ++i)
    p.x[i] = (i == n_grid) ? x_max : x_min + i * p.spacing;

  auto g = [&](double s) { return s * w.eval_product1(s) * std::exp(lambda * s); };

  // Absolute scale of the cumulative integral, for the inner tolerance.
  double scale_est = adaptive_gk([&](double s) { return std::fabs(g(s)); },
                                 x_min, x_max, 1e-8);
  scale_est = std::max(scale_est, 1e-12);
  double cell_tol = std::max(1e-13 * scale_est / n_grid, 5e-17 * scale_est);

  // Cumulative integral A_i = int_{x_min}^{x_i} g, compensated in index order.
  Vec cum(nn);
  KahanSum acc;
  cum[0] = 0.0;
  for (int i = 1; i < nn; ++i) {
    acc.add(adaptive_gk(g, p.x[i - 1], p.x[i], cell_tol));
    cum[i] = acc.value();
  }

  p.psi.resize(nn);
  p.phi.resize(nn);
  for (int i = 0; i < nn; ++i) {
    p.psi[i] = -std::exp(-lambda * p.x[i]) * cum[i];
    p.phi[i] = p.psi[i] / w.eval_product1(p.x[i]);
  }
  p.psi[0] = 0.0;  // empty integral; avoid the negative zero
  p.phi[0] = 0.0;
  p.max_psi = 0.0;
  for (int i = 0; i < nn; ++i) p.max_psi = std::max(p.max_psi, p.psi[i]);
  p.closure_defect = std::fabs(p.psi[n_grid]);

  if (p.closure_defect > closure_rel_tol * std::max(p.max_psi, 1e-300))
    fail(ErrorCode::closure_failure,
         "profile does not close: |psi(x_max)| = " + format_g17(p.closure_defect) +
             " vs max psi = " + format_g17(p.max_psi) +
             " (lambda does not satisfy the vanishing condition)");

  for (int i = 1; i < n_grid; ++i)
    if (!(p.psi[i] > 0.0))
      fail(ErrorCode::non_positive_profile,
           "psi <= 0 at interior grid point x = " + format_g17(p.x[i]));

  // Potential in the gauge fixed by c_lambda; infinite at the degenerate ends.
  p.u.assign(nn, kInf);
  for (int i = 1; i < n_grid; ++i)
    p.u[i] = -c_lambda - lambda * p.x[i] - std::log(p.psi[i]);

  // Fiber coordinate t(x) = int_{x_c}^{x} ds / phi(s), anchored at the
  // interval midpoint. The integrand P/psi needs psi between nodes; evaluate
  // it from the nearest node's cumulative value plus a local panel.
  auto psi_at = [&](double s, int cell) {
    double local = adaptive_gk(g, p.x[cell], s, cell_tol);
    return -std::exp(-lambda * s) * (cum[cell] + local);
  };
  auto inv_phi = [&](double s, int cell) {
    return w.eval_product1(s) / psi_at(s, cell);
  };

  p.t.assign(nn, kInf);
  p.t[0] = -kInf;
  double x_c = 0.5 * (x_min + x_max);
  int ic = n_grid / 2;  // node at or just left of the midpoint
  double t_tol = 1e-12;
  double t_anchor = -adaptive_gk([&](double s) { return inv_phi(s, ic); },
                                 p.x[ic], x_c, t_tol);
  p.t[ic] = t_anchor + 0.0;  // clears the negative zero when ic is the anchor
  for (int i = ic + 1; i <= n_grid - 1; ++i)
    p.t[i] = p.t[i - 1] + adaptive_gk([&](double s) { return inv_phi(s, i - 1); },
                                      p.x[i - 1], p.x[i], t_tol);
  for (int i = ic - 1; i >= 1; --i)
    p.t[i] = p.t[i + 1] - adaptive_gk([&](double s) { return inv_phi(s, i); },
                                      p.x[i], p.x[i + 1], t_tol);
  return p;
}

SlopeCheck boundary_slope_check(const Profile1D& p) {
  SlopeCheck s;
  int n = p.n_grid;
  double h = p.spacing;
  s.slope_min = (p.phi[1] - p.phi[0]) / h;
  s.slope_max = (p.phi[n] - p.phi[n - 1]) / h;
  s.expected_min = -p.x_min;
  s.expected_max = -p.x_max;
  double tol = 10.0 / n;
  double rel_lo = std::fabs(s.slope_min - s.expected_min) / std::fabs(s.expected_min);
  double rel_hi = std::fabs(s.slope_max - s.expected_max) / std::fabs(s.expected_max);
  s.pass = rel_lo <= tol && rel_hi <= tol;
  return s;
}

ResidualReport ma_residual_1d(const Profile1D& p, const WeightFormSet& w) {
  if (w.dim() != 1) fail(ErrorCode::dimension_mismatch, "residual needs m = 1 forms");
  ResidualReport r;
  r.worst_point = {0.0};
  KahanSum sq;
  int n = p.n_grid;
  bool nonfinite = false;
  for (int i = 3; i <= n - 3; ++i) {
    double res = std::log(p.phi[i]) + std::log(w.eval_product1(p.x[i])) +
                 p.lambda * p.x[i] + p.u[i] + p.c_lambda;
    if (!std::isfinite(res)) {
      nonfinite = true;
      r.worst_point[0] = p.x[i];
    }
    double mag = std::fabs(res);
    sq.add(res * res);
    if (mag > r.sup_norm) {
      r.sup_norm = mag;
      r.worst_point[0] = p.x[i];
    }
    ++r.points_evaluated;
  }
  r.l2_norm = std::sqrt(sq.value() * p.spacing);
  if (nonfinite) {
    // a candidate profile with log singularities inside the collar
    r.sup_norm = std::numeric_limits<double>::infinity();
    r.l2_norm = std::numeric_limits<double>::infinity();
  }
  return r;
}

ResidualReport ma_residual_grid(const GridField& u, const Vec& lambda,
                                double c_lambda, const WeightFormSet& w,
                                const Polytope& p) {
  int m = u.dim;
  if ((int)u.shape.size() != m || (int)u.origin.size() != m || (int)u.spacing.size() != m)
    fail(ErrorCode::invalid_argument, "grid field metadata is inconsistent");
  if (w.dim() != m || p.dim() != m)
    fail(ErrorCode::dimension_mismatch, "grid residual dimension mismatch");
  if ((int)lambda.size() != m)
    fail(ErrorCode::dimension_mismatch, "lambda dimension mismatch");
  size_t expect = 1;
  for (int k = 0; k < m; ++k) {
    if (u.shape[k] < 3)
      fail(ErrorCode::invalid_argument, "grid needs >= 3 nodes per axis");
    expect *= (size_t)u.shape[k];
  }
  if (u.values.size() != expect)
    fail(ErrorCode::invalid_argument, "grid value count does not match shape");

  std::vector<size_t> stride(m);
  size_t s = 1;
  for (int k = m - 1; k >= 0; --k) {
    stride[k] = s;
    s *= (size_t)u.shape[k];
  }

  ResidualReport r;
  r.worst_point.assign(m, 0.0);
  KahanSum sq;
  double cell_vol = 1.0;
  for (int k = 0; k < m; ++k) cell_vol *= u.spacing[k];

  std::vector<int> idx(m, 1);
  bool done = false;
  Vec grad(m), point(m);
  Mat hess(m * m);
  while (!done) {
    size_t off = 0;
    for (int k = 0; k < m; ++k) off += (size_t)idx[k] * stride[k];
    for (int k = 0; k < m; ++k) point[k] = u.origin[k] + idx[k] * u.spacing[k];

    for (int k = 0; k < m; ++k)
      grad[k] = (u.values[off + stride[k]] - u.values[off - stride[k]]) / (2.0 * u.spacing[k]);
    for (int k = 0; k < m; ++k) {
      hess[k * m + k] = (u.values[off + stride[k]] - 2.0 * u.values[off] +
                         u.values[off - stride[k]]) /
                        (u.spacing[k] * u.spacing[k]);
      for (int l = k + 1; l < m; ++l) {
        double v = (u.values[off + stride[k] + stride[l]] -
                    u.values[off + stride[k] - stride[l]] -
                    u.values[off - stride[k] + stride[l]] +
                    u.values[off - stride[k] - stride[l]]) /
                   (4.0 * u.spacing[k] * u.spacing[l]);
        hess[k * m + l] = v;
        hess[l * m + k] = v;
      }
    }

    if (!p.strictly_contains(grad))
      fail(ErrorCode::gradient_out_of_polytope,
           "grid gradient leaves the moment polytope interior");
    double pw = w.eval_product(grad);
    if (!(pw > 0.0))
      fail(ErrorCode::non_positive_weight,
           "weight product is not positive at a grid gradient");

    Mat chol = hess;
    if (!cholesky(chol, m))
      fail(ErrorCode::singular_hessian,
           "finite-difference Hessian is not positive definite");
    double logdet = 0.0;
    for (int k = 0; k < m; ++k) logdet += 2.0 * std::log(chol[k * m + k]);

    double res = logdet + std::log(pw) + dot(lambda, grad) + u.values[off] + c_lambda;
    double mag = std::fabs(res);
    sq.add(res * res);
    if (mag > r.sup_norm) {
      r.sup_norm = mag;
      r.worst_point = point;
    }
    ++r.points_evaluated;

    int k = m - 1;
    while (k >= 0) {
      if (++idx[k] <= u.shape[k] - 2) break;
      idx[k] = 1;
      --k;
    }
    if (k < 0) done = true;
  }

  r.l2_norm = std::sqrt(sq.value() * cell_vol);
  return r;
}

}  // namespace toric
