#ifndef TORIC_POLYTOPE_HPP
#define TORIC_POLYTOPE_HPP

#include <vector>

#include "core/numeric.hpp"

namespace toric {

struct Facet {
  Vec normal;     // inequality: normal . x + offset >= 0
  double offset = 0.0;
};

struct Simplex {
  int dim = 0;
  std::vector<Vec> vertices;  // dim + 1 points
  double volume() const;
  double diameter() const;
};

// Moment polytope of the toric fiber, kept in vertex + facet form.
// Construction validates boundedness, full dimension and vertex/facet
// consistency; the triangulation is computed once and is deterministic in
// the input up to reordering.
class Polytope {
 public:
  static Polytope validate(std::vector<Vec> vertices, std::vector<Facet> facets);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Simplex>& triangulation() const { return simplices_; }

  double diameter() const { return diameter_; }
  // Largest |x_k| over vertices; scale floor for moment tolerances.
  double coordinate_radius() const { return coord_radius_; }
  const Vec& bbox_lo() const { return bbox_lo_; }
  const Vec& bbox_hi() const { return bbox_hi_; }

  double volume() const;

  // Signed residual of facet i at x (>= 0 inside), normalized by |normal|.
  double facet_residual(int i, const Vec& x) const;
  bool contains(const Vec& x, double tol = 0.0) const;
  // Strict interior test with the validation tolerance.
  bool strictly_contains(const Vec& x) const;
  bool origin_interior() const;

 private:
  Polytope() = default;
  void build_triangulation();

  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<Simplex> simplices_;
  double diameter_ = 0.0;
  double coord_radius_ = 0.0;
  double tol_ = 0.0;  // 1e-9 scaled by diameter
  Vec bbox_lo_, bbox_hi_;
};

}  // namespace toric

#endif
