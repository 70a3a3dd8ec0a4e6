#include "core/forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"

namespace toric {

WeightFormSet WeightFormSet::from_raw(int dim, const std::vector<Vec>& raw_a, const Vec& raw_b) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "form dimension must be >= 1");
  if (raw_a.size() != raw_b.size())
    fail(ErrorCode::dimension_mismatch, "weight lists a and b differ in length");
  std::vector<WeightForm> forms;
  forms.reserve(raw_a.size());
  const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
  for (size_t i = 0; i < raw_a.size(); ++i) {
    if ((int)raw_a[i].size() != dim)
      fail(ErrorCode::dimension_mismatch,
           "weight vector " + std::to_string(i) + " has wrong dimension");
    WeightForm f;
    f.c = scale(raw_a[i], -inv4pi);
    f.d = raw_b[i];
    forms.push_back(std::move(f));
  }
  return direct(dim, std::move(forms));
}

WeightFormSet WeightFormSet::direct(int dim, std::vector<WeightForm> forms) {
  WeightFormSet w;
  w.dim_ = dim;
  for (size_t i = 0; i < forms.size(); ++i) {
    if ((int)forms[i].c.size() != dim)
      fail(ErrorCode::dimension_mismatch, "form " + std::to_string(i) + " has wrong dimension");
    // A constant form that is nowhere positive makes the weight product
    // non-positivizable; reject at ingestion.
    if (norm_inf(forms[i].c) == 0.0 && forms[i].d <= 0.0)
      fail(ErrorCode::non_positive_weight,
           "form " + std::to_string(i) + " is a constant <= 0");
  }
  w.forms_ = std::move(forms);
  return w;
}

double WeightFormSet::eval_form(int i, const Vec& x) const {
  return dot(forms_[i].c, x) + forms_[i].d;
}

double WeightFormSet::eval_product(const Vec& x) const {
  double p = 1.0;
  for (const auto& f : forms_) p *= dot(f.c, x) + f.d;
  return p;
}

double WeightFormSet::eval_product1(double x) const {
  double p = 1.0;
  for (const auto& f : forms_) p *= f.c[0] * x + f.d;
  return p;
}

FanoReport fano_check(const Polytope& p, const WeightFormSet& w) {
  if (p.dim() != w.dim())
    fail(ErrorCode::dimension_mismatch, "polytope and form set dimensions differ");
  FanoReport r;
  if (w.empty()) {
    r.is_fano = true;
    r.margin = std::numeric_limits<double>::infinity();
    return r;
  }
  r.margin = std::numeric_limits<double>::infinity();
  for (int fi = 0; fi < w.count(); ++fi) {
    for (int vi = 0; vi < (int)p.vertices().size(); ++vi) {
      double val = w.eval_form(fi, p.vertices()[vi]);
      r.margin = std::min(r.margin, val);
      if (val <= 0.0) r.violations.push_back({fi, vi, val});
    }
  }
  r.is_fano = r.margin > 0.0;
  return r;
}

ProductBounds product_bounds(const Polytope& p, const WeightFormSet& w) {
  ProductBounds b;
  for (int fi = 0; fi < w.count(); ++fi) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : p.vertices()) {
      double val = w.eval_form(fi, v);
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    b.lower *= lo;
    b.upper *= hi;
  }
  return b;
}

}  // namespace toric
