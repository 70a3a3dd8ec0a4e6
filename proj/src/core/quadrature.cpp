#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "core/errors.hpp"

namespace toric {

namespace {

// Evaluation points and weights of the Grundmann-Moller rule of index s in
// dimension m, degree d = 2s+1, expressed in barycentric coordinates. The
// weights already integrate against the unit-simplex volume; a general
// simplex picks up the factor m! * vol.
struct GmTerm {
  double weight;
  std::vector<double> bary;  // m + 1 entries
};

void compositions(int total, int slots, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (slots == 1) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, slots - 1, cur, emit);
    cur.pop_back();
  }
}

const std::vector<GmTerm>& gm_rule(int index, int m) {
  // node handles in std::map are stable, so returning references out of the
  // lock is safe; entries are never erased
  static std::map<std::pair<int, int>, std::vector<GmTerm>> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(index, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<GmTerm> rule;
  int s = index;
  int d = 2 * s + 1;
  for (int i = 0; i <= s; ++i) {
    // w_i = (-1)^i 2^{-2s} (d + m - 2i)^d / (i! (d + m - i)!)
    long double w = (i % 2 == 0) ? 1.0L : -1.0L;
    w *= powl(2.0L, -2.0L * s);
    w *= powl((long double)(d + m - 2 * i), (long double)d);
    for (int k = 2; k <= i; ++k) w /= k;
    for (int k = 2; k <= d + m - i; ++k) w /= k;

    double denom = (double)(d + m - 2 * i);
    std::vector<int> cur;
    compositions(s - i, m + 1, cur, [&](const std::vector<int>& beta) {
      GmTerm t;
      t.weight = (double)w;
      t.bary.resize(m + 1);
      for (int j = 0; j <= m; ++j) t.bary[j] = (2.0 * beta[j] + 1.0) / denom;
      rule.push_back(std::move(t));
    });
  }
  auto res = cache.emplace(key, std::move(rule));
  return res.first->second;
}

double simplex_jacobian(const Simplex& s) {
  double factorial = 1.0;
  for (int k = 2; k <= s.dim; ++k) factorial *= k;
  return s.volume() * factorial;
}

// Longest-edge bisection, deterministic: ties broken by vertex index pair.
void bisect_until(const Simplex& s, double max_diam, int depth,
                  std::vector<Simplex>& out) {
  if (s.diameter() <= max_diam || depth >= 24) {
    out.push_back(s);
    return;
  }
  int bi = 0, bj = 1;
  double best = -1.0;
  for (size_t i = 0; i < s.vertices.size(); ++i)
    for (size_t j = i + 1; j < s.vertices.size(); ++j) {
      double len = norm2(sub(s.vertices[i], s.vertices[j]));
      if (len > best + 1e-15) {
        best = len;
        bi = (int)i;
        bj = (int)j;
      }
    }
  Vec mid(s.dim);
  for (int k = 0; k < s.dim; ++k)
    mid[k] = 0.5 * (s.vertices[bi][k] + s.vertices[bj][k]);
  Simplex a = s, b = s;
  a.vertices[bj] = mid;
  b.vertices[bi] = mid;
  bisect_until(a, max_diam, depth + 1, out);
  bisect_until(b, max_diam, depth + 1, out);
}

struct TensorAccum {
  KahanSum i0;
  std::vector<KahanSum> i1;
  std::vector<KahanSum> i2;
  explicit TensorAccum(int m) : i1(m), i2(m * m) {}
};

}  // namespace

double gm_integrate(const Simplex& s, int index,
                    const std::function<double(const Vec&)>& f) {
  const auto& rule = gm_rule(index, s.dim);
  double jac = simplex_jacobian(s);
  KahanSum acc;
  Vec x(s.dim);
  for (const auto& t : rule) {
    for (int k = 0; k < s.dim; ++k) {
      double c = 0.0;
      for (int j = 0; j <= s.dim; ++j) c += t.bary[j] * s.vertices[j][k];
      x[k] = c;
    }
    acc.add(t.weight * f(x));
  }
  return jac * acc.value();
}

MomentTensor weighted_moments(const Polytope& p, const WeightFormSet& w,
                              const Vec& lambda, const MomentOptions& opt) {
  int m = p.dim();
  if ((int)lambda.size() != m)
    fail(ErrorCode::dimension_mismatch, "lambda dimension mismatch");
  if (w.dim() != m)
    fail(ErrorCode::dimension_mismatch, "form set dimension mismatch");

  if (opt.require_positive && !w.empty()) {
    FanoReport fr = fano_check(p, w);
    if (!fr.is_fano)
      fail(ErrorCode::non_positive_weight,
           "weight product is not strictly positive on the polytope");
  }

  // The exponential sharpens with |lambda| * diameter; bisect simplices so
  // each panel sees a bounded exponent variation, then escalate the degree.
  double lam_norm = norm2(lambda);
  double max_diam = lam_norm > 0.0 ? 4.0 / lam_norm : p.diameter();
  max_diam = std::max(max_diam, p.diameter() / 64.0);
  std::vector<Simplex> panels;
  for (const auto& s : p.triangulation()) bisect_until(s, max_diam, 0, panels);

  double radius = std::max(1.0, p.coordinate_radius());

  auto eval_all = [&](int index) {
    TensorAccum acc(m);
    Vec x(m);
    for (const auto& s : panels) {
      const auto& rule = gm_rule(index, m);
      double jac = simplex_jacobian(s);
      // accumulate the small per-panel sums in plain doubles, then push one
      // compensated contribution per panel in fixed order
      double t0 = 0.0;
      Vec t1(m, 0.0);
      Mat t2(m * m, 0.0);
      for (const auto& t : rule) {
        for (int k = 0; k < m; ++k) {
          double c = 0.0;
          for (int j = 0; j <= m; ++j) c += t.bary[j] * s.vertices[j][k];
          x[k] = c;
        }
        double g = t.weight * std::exp(dot(lambda, x)) * w.eval_product(x);
        t0 += g;
        for (int k = 0; k < m; ++k) {
          t1[k] += g * x[k];
          for (int l = k; l < m; ++l) t2[k * m + l] += g * x[k] * x[l];
        }
      }
      acc.i0.add(jac * t0);
      for (int k = 0; k < m; ++k) acc.i1[k].add(jac * t1[k]);
      for (int k = 0; k < m; ++k)
        for (int l = k; l < m; ++l) acc.i2[k * m + l].add(jac * t2[k * m + l]);
    }
    MomentTensor out;
    out.i0 = acc.i0.value();
    out.i1.resize(m);
    out.i2.assign(m * m, 0.0);
    for (int k = 0; k < m; ++k) out.i1[k] = acc.i1[k].value();
    for (int k = 0; k < m; ++k)
      for (int l = k; l < m; ++l) {
        out.i2[k * m + l] = acc.i2[k * m + l].value();
        out.i2[l * m + k] = out.i2[k * m + l];
      }
    return out;
  };

  int index = 2;  // degree 5, escalating in steps of one index (degree +2)
  MomentTensor prev = eval_all(index);
  while (true) {
    int next = index + 1;
    if (2 * next + 1 > opt.degree_cap)
      fail(ErrorCode::non_convergent,
           "cubature did not converge below the degree cap");
    MomentTensor cur = eval_all(next);

    double floor0 = std::fabs(cur.i0);
    auto close = [&](double a, double b, double fl) {
      return std::fabs(a - b) <= opt.rel_tol * std::max({std::fabs(a), std::fabs(b), fl});
    };
    bool ok = close(prev.i0, cur.i0, floor0);
    for (int k = 0; k < m && ok; ++k)
      ok = close(prev.i1[k], cur.i1[k], floor0 * radius);
    for (int k = 0; k < m * m && ok; ++k)
      ok = close(prev.i2[k], cur.i2[k], floor0 * radius * radius);
    if (ok) {
      if (opt.require_positive && !(cur.i0 > 0.0))
        fail(ErrorCode::non_convergent, "order-0 moment is not positive");
      return cur;
    }
    prev = std::move(cur);
    index = next;
  }
}

McResult mc_oracle(const Polytope& p, const std::function<double(const Vec&)>& f,
                   long long n, uint64_t seed) {
  if (n < 1) fail(ErrorCode::invalid_argument, "sample count must be >= 1");
  int m = p.dim();
  const Vec& lo = p.bbox_lo();
  const Vec& hi = p.bbox_hi();
  double box_vol = 1.0;
  for (int k = 0; k < m; ++k) {
    double w = hi[k] - lo[k];
    if (!(w > 0.0)) fail(ErrorCode::empty_box, "bounding box is degenerate");
    box_vol *= w;
  }

  std::mt19937_64 rng(seed);
  Vec x(m);
  // Welford over g = f * indicator, in a single stream.
  double mean = 0.0, m2 = 0.0;
  for (long long i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * uniform01(rng);
    double g = p.contains(x) ? f(x) : 0.0;
    double delta = g - mean;
    mean += delta / (double)(i + 1);
    m2 += delta * (g - mean);
  }
  McResult r;
  r.estimate = box_vol * mean;
  double var = n > 1 ? m2 / (double)(n - 1) : 0.0;
  r.stderr_est = box_vol * std::sqrt(var / (double)n);
  return r;
}

}  // namespace toric
