#ifndef TORIC_SOLITON_HPP
#define TORIC_SOLITON_HPP

#include "core/forms.hpp"
#include "core/polytope.hpp"
#include "core/quadrature.hpp"

namespace toric {

struct SolitonOptions {
  // Convergence on |I1/I0| in the diameter-normalized metric.
  double tol = 1e-10;
  int max_iterations = 100;
  double armijo = 1e-4;
  double moment_rel_tol = 1e-12;
  int degree_cap = 25;
  // Newton start; empty means the origin.
  Vec start;
};

struct SolitonResult {
  Vec lambda;                 // soliton vector
  double c_lambda = 0.0;      // normalization constant log(I0(0)/I0(lambda))
  Vec futaki;                 // weighted barycenter at lambda = 0
  int iterations = 0;         // Newton loop passes, including the final check
  double residual_norm = 0.0; // |I1/I0| / diameter at return
  bool hessian_pd_all = true; // every Newton Hessian passed Cholesky
  // theta in moment coordinates is the affine function lambda.x + c_lambda.
};

// Weighted barycenter I1(0)/I0(0); zero iff the Kahler-Einstein obstruction
// vanishes. Requires the Fano condition.
Vec futaki_vector(const Polytope& p, const WeightFormSet& w,
                  const MomentOptions& mopt = {});

// Damped Newton for the unique root of g(lambda) = I1(lambda)/I0(lambda),
// which is the gradient of the strictly convex F(lambda) = log I0(lambda).
SolitonResult solve_soliton_vector(const Polytope& p, const WeightFormSet& w,
                                   const SolitonOptions& opt = {});

double normalization_constant(const Polytope& p, const WeightFormSet& w,
                              const Vec& lambda, const MomentOptions& mopt = {});

}  // namespace toric

#endif
