#include "core/soliton.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace toric {

namespace {

MomentOptions moment_options(const SolitonOptions& opt) {
  MomentOptions m;
  m.rel_tol = opt.moment_rel_tol;
  m.degree_cap = opt.degree_cap;
  m.require_positive = true;
  return m;
}

}  // namespace

Vec futaki_vector(const Polytope& p, const WeightFormSet& w, const MomentOptions& mopt) {
  FanoReport fr = fano_check(p, w);
  if (!fr.is_fano) fail(ErrorCode::not_fano, "polytope/forms pair is not Fano");
  MomentTensor t = weighted_moments(p, w, Vec(p.dim(), 0.0), mopt);
  return scale(t.i1, 1.0 / t.i0);
}

SolitonResult solve_soliton_vector(const Polytope& p, const WeightFormSet& w,
                                   const SolitonOptions& opt) {
  int m = p.dim();
  FanoReport fr = fano_check(p, w);
  if (!fr.is_fano) fail(ErrorCode::not_fano, "polytope/forms pair is not Fano");
  if (!p.origin_interior())
    fail(ErrorCode::origin_not_interior,
         "origin is not in the interior of the moment polytope");

  MomentOptions mopt = moment_options(opt);
  double diam = std::max(p.diameter(), 1e-30);

  SolitonResult res;
  res.lambda = opt.start.empty() ? Vec(m, 0.0) : opt.start;
  if ((int)res.lambda.size() != m)
    fail(ErrorCode::dimension_mismatch, "start point dimension mismatch");

  MomentTensor t0 = weighted_moments(p, w, Vec(m, 0.0), mopt);
  res.futaki = scale(t0.i1, 1.0 / t0.i0);

  MomentTensor t = weighted_moments(p, w, res.lambda, mopt);
  double F = std::log(t.i0);
  bool converged = false;

  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    res.iterations = iter;
    Vec g = scale(t.i1, 1.0 / t.i0);
    double resid = norm2(g) / diam;
    res.residual_norm = resid;
    if (resid <= opt.tol) {
      converged = true;
      // Polish: Newton converges quadratically, so one or two extra full
      // steps push the root to machine level; keep them only while the
      // residual strictly improves.
      for (int extra = 0; extra < 2 && resid > 1e-15; ++extra) {
        Mat h(m * m);
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c)
            h[r * m + c] = t.i2[r * m + c] / t.i0 - g[r] * g[c];
        Mat chol = h;
        if (!cholesky(chol, m)) {
          res.hessian_pd_all = false;
          break;
        }
        Vec step = cholesky_solve(chol, m, g);
        Vec trial = sub(res.lambda, step);
        MomentTensor tt = weighted_moments(p, w, trial, mopt);
        Vec gg = scale(tt.i1, 1.0 / tt.i0);
        double rr = norm2(gg) / diam;
        if (rr < resid) {
          res.lambda = trial;
          t = std::move(tt);
          g = gg;
          resid = rr;
          res.residual_norm = rr;
        } else {
          break;
        }
      }
      break;
    }

    Mat h(m * m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        h[r * m + c] = t.i2[r * m + c] / t.i0 - g[r] * g[c];
    Mat chol = h;
    if (!cholesky(chol, m)) {
      res.hessian_pd_all = false;
      fail(ErrorCode::non_convergent, "Newton Hessian is not positive definite");
    }
    Vec dir = scale(cholesky_solve(chol, m, g), -1.0);
    double slope = dot(g, dir);  // < 0 for a descent direction

    double step = 1.0;
    bool accepted = false;
    double gnorm = norm2(g);
    // Near the optimum the predicted F decrease drops below the rounding of
    // log I0, so the Armijo test alone goes blind and full Newton steps get
    // rejected. The Newton direction is a descent direction for |g|^2 as
    // well (gradient of the same strictly convex F), so sufficient decrease
    // of |g| is an equally sound acceptance that stays measurable.
    double fuzz = 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(F) + 1.0);
    for (int halve = 0; halve < 60; ++halve) {
      Vec trial = add(res.lambda, scale(dir, step));
      MomentTensor tt = weighted_moments(p, w, trial, mopt);
      double Ft = std::log(tt.i0);
      double gt = norm2(scale(tt.i1, 1.0 / tt.i0));
      if (Ft <= F + opt.armijo * step * slope + fuzz ||
          gt <= (1.0 - opt.armijo * step) * gnorm) {
        res.lambda = trial;
        t = std::move(tt);
        F = Ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      fail(ErrorCode::non_convergent, "line search failed to make progress");
  }

  if (!converged)
    fail(ErrorCode::max_iterations,
         "Newton did not reach tolerance in " + std::to_string(opt.max_iterations) +
             " iterations");

  res.c_lambda = std::log(t0.i0) - std::log(t.i0);
  return res;
}

double normalization_constant(const Polytope& p, const WeightFormSet& w,
                              const Vec& lambda, const MomentOptions& mopt) {
  MomentTensor t0 = weighted_moments(p, w, Vec(p.dim(), 0.0), mopt);
  MomentTensor tl = weighted_moments(p, w, lambda, mopt);
  return std::log(t0.i0) - std::log(tl.i0);
}

}  // namespace toric
