#ifndef TORIC_PROFILE_HPP
#define TORIC_PROFILE_HPP

#include "core/forms.hpp"
#include "core/polytope.hpp"

namespace toric {

// Sampled solitonic metric data for a 1-D fiber: moment coordinate grid x,
// profile phi (the second derivative of the potential along the fiber),
// potential u sampled against x, and the fiber coordinate map t(x) anchored
// at the interval midpoint. u and t are +/-inf at the interval endpoints,
// where the fiber degenerates.
struct Profile1D {
  double x_min = 0.0, x_max = 0.0;
  double lambda = 0.0, c_lambda = 0.0;
  int n_grid = 0;         // number of cells; n_grid + 1 nodes
  double spacing = 0.0;
  Vec x, phi, u, t;
  Vec psi;                // psi = P * phi, the linear ODE unknown
  double max_psi = 0.0;
  double closure_defect = 0.0;  // |psi(x_max)|
};

// Integrates (P*phi)' + lambda*P*phi + x*P = 0 with psi(x_min) = 0 and
// certifies the terminal condition psi(x_max) = 0 within
// closure_rel_tol * max psi. Failure of the terminal condition means lambda
// does not satisfy the vanishing condition for this interval and weight.
Profile1D solve_profile(double x_min, double x_max, const WeightFormSet& w,
                        double lambda, double c_lambda, int n_grid,
                        double closure_rel_tol = 1e-9);

struct SlopeCheck {
  double slope_min = 0.0, slope_max = 0.0;
  double expected_min = 0.0, expected_max = 0.0;
  bool pass = false;
};

// One-sided difference slopes of phi at the endpoints against the analytic
// values -x_min and -x_max; pass if both match within 10/n_grid relative.
SlopeCheck boundary_slope_check(const Profile1D& p);

struct ResidualReport {
  double sup_norm = 0.0;
  double l2_norm = 0.0;  // integral norm: sqrt(sum r^2 * cell volume)
  Vec worst_point;
  int points_evaluated = 0;
};

// Pointwise log-form residual log(phi) + log(P) + lambda*x + u + c_lambda on
// the interior collar [x_min + 3h, x_max - 3h].
ResidualReport ma_residual_1d(const Profile1D& p, const WeightFormSet& w);

// Scalar field on a uniform box grid in fiber coordinates.
struct GridField {
  int dim = 0;
  std::vector<int> shape;  // nodes per axis
  Vec origin;              // coordinate of the first node
  Vec spacing;             // per-axis node spacing
  Vec values;              // row-major, last axis fastest
};

// General-m residual of the reduced equation for a candidate potential u:
// log det(D^2 u) + log P(grad u) + lambda.grad u + u + c_lambda, with central
// differences, over the stencil-complete interior. The gradient must land in
// the interior of the moment polytope.
ResidualReport ma_residual_grid(const GridField& u, const Vec& lambda,
                                double c_lambda, const WeightFormSet& w,
                                const Polytope& p);

}  // namespace toric

#endif
