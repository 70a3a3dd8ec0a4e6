#ifndef TORIC_QUADRATURE_HPP
#define TORIC_QUADRATURE_HPP

#include <cstdint>
#include <functional>

#include "core/forms.hpp"
#include "core/polytope.hpp"

namespace toric {

// Weighted moments of order 0, 1, 2:
//   Ik = integral over the polytope of x^{(x) k} * exp(lambda.x) * P(x) dx.
struct MomentTensor {
  double i0 = 0.0;
  Vec i1;   // length m
  Mat i2;   // m x m, row-major, symmetric
};

struct MomentOptions {
  double rel_tol = 1e-12;
  int degree_cap = 25;          // max cubature degree (odd)
  bool require_positive = true; // enforce P > 0 on the polytope
};

MomentTensor weighted_moments(const Polytope& p, const WeightFormSet& w,
                              const Vec& lambda, const MomentOptions& opt = {});

// Grundmann-Moller rule of index s (degree 2s+1) applied to one simplex.
double gm_integrate(const Simplex& s, int index,
                    const std::function<double(const Vec&)>& f);

// Rejection-sampling Monte-Carlo from the vertex bounding box; deterministic
// per seed and single-streamed. Returns (estimate, standard error).
struct McResult {
  double estimate = 0.0;
  double stderr_est = 0.0;
};
McResult mc_oracle(const Polytope& p, const std::function<double(const Vec&)>& f,
                   long long n, uint64_t seed);

}  // namespace toric

#endif
