#ifndef TORIC_FORMS_HPP
#define TORIC_FORMS_HPP

#include <string>
#include <vector>

#include "core/numeric.hpp"
#include "core/polytope.hpp"

namespace toric {

struct WeightForm {
  Vec c;          // slope, already divided by -4*pi at ingestion
  double d = 0.0; // offset
};

// Affine weight forms L(x) = c.x + d contributed by the base; the product
// P(x) of all forms is the fiber-direction volume weight. An empty set means
// P == 1 (base reduced to a point).
class WeightFormSet {
 public:
  // raw_a / raw_b are the base weights; stored slope is c = -a / (4*pi).
  static WeightFormSet from_raw(int dim, const std::vector<Vec>& raw_a, const Vec& raw_b);
  // Forms that are already plain affine data (tests, presets round-trips).
  static WeightFormSet direct(int dim, std::vector<WeightForm> forms);

  int dim() const { return dim_; }
  int count() const { return (int)forms_.size(); }
  bool empty() const { return forms_.empty(); }
  const std::vector<WeightForm>& forms() const { return forms_; }

  double eval_form(int i, const Vec& x) const;
  // P(x) = prod_i L_i(x); 1 for the empty set.
  double eval_product(const Vec& x) const;

  // 1-D convenience overload used by the metric profile code.
  double eval_product1(double x) const;

 private:
  int dim_ = 0;
  std::vector<WeightForm> forms_;
};

struct FanoViolation {
  int form_index = 0;
  int vertex_index = 0;
  double value = 0.0;
};

struct FanoReport {
  bool is_fano = false;
  // min over forms and vertices of L(vertex); +inf for the empty form set.
  double margin = 0.0;
  std::vector<FanoViolation> violations;
};

FanoReport fano_check(const Polytope& p, const WeightFormSet& w);

// Rigorous positive bounds for P over the polytope from per-form vertex
// extremes; valid whenever the Fano check passes.
struct ProductBounds {
  double lower = 1.0;
  double upper = 1.0;
};
ProductBounds product_bounds(const Polytope& p, const WeightFormSet& w);

}  // namespace toric

#endif
