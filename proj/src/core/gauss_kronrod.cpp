#include "core/gauss_kronrod.hpp"

#include <cmath>

namespace toric {

namespace {

// 15-point Kronrod nodes on [-1, 1] and weights, with the embedded 7-point
// Gauss weights (QUADPACK values).
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    double f1 = f(c - x);
    double f2 = f(c + x);
    res_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
  }
  PanelResult r;
  r.integral = res_k * h;
  r.error = std::fabs((res_k - res_g) * h);
  return r;
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int depth, int max_depth) {
  PanelResult r = gk15(f, a, b);
  if (r.error <= abs_tol || depth >= max_depth) return r.integral;
  double c = 0.5 * (a + b);
  return integrate_rec(f, a, c, 0.5 * abs_tol, depth + 1, max_depth) +
         integrate_rec(f, c, b, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return integrate_rec(f, a, b, abs_tol, 0, max_depth);
}

}  // namespace toric
