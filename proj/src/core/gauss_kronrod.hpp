#ifndef TORIC_GAUSS_KRONROD_HPP
#define TORIC_GAUSS_KRONROD_HPP

#include <functional>

namespace toric {

// Adaptive (G7, K15) panel integration of f over [a, b] to the given
// absolute tolerance. Panels are bisected depth-first, left child first, so
// the evaluation order is deterministic.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int max_depth = 48);

}  // namespace toric

#endif
