#include "core/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "core/errors.hpp"

namespace toric {

namespace {

constexpr double kBaseTol = 1e-9;
constexpr int kMaxFacets = 64;
constexpr int kMaxVertices = 4096;

double det_full(Mat a, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(a[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return true;
    if (a[k] > b[k]) return false;
  }
  return false;
}

Vec centroid_of(const std::vector<Vec>& pts, const std::vector<int>& ids, int dim) {
  Vec c(dim, 0.0);
  for (int id : ids)
    for (int k = 0; k < dim; ++k) c[k] += pts[id][k];
  for (int k = 0; k < dim; ++k) c[k] /= (double)ids.size();
  return c;
}

int affine_dim(const std::vector<Vec>& pts, const std::vector<int>& ids, int dim, double tol) {
  if (ids.empty()) return -1;
  std::vector<Vec> rows;
  for (size_t i = 1; i < ids.size(); ++i) rows.push_back(sub(pts[ids[i]], pts[ids[0]]));
  return numeric_rank(std::move(rows), dim, tol);
}

// Enumerate the candidate directions of unbounded recession: null vectors of
// (m-1)-subsets of normals. For m = 1 the candidates are +/- e_1.
bool has_recession_direction(const std::vector<Facet>& facets, int m, double tol) {
  std::vector<Vec> normals;
  for (const auto& f : facets) {
    Vec n = f.normal;
    double len = norm2(n);
    for (auto& v : n) v /= len;
    normals.push_back(n);
  }
  if (numeric_rank(normals, m, 1e-12) < m) return true;

  auto feasible_dir = [&](const Vec& d) {
    for (const auto& n : normals)
      if (dot(n, d) < -tol) return false;
    return true;
  };

  if (m == 1) {
    Vec d{1.0};
    return feasible_dir(d) || feasible_dir(Vec{-1.0});
  }

  int nf = (int)normals.size();
  // iterate over (m-1)-subsets
  std::vector<int> comb;
  std::vector<std::vector<int>> subsets;
  std::function<void(int)> gen = [&](int start) {
    if ((int)comb.size() == m - 1) {
      subsets.push_back(comb);
      return;
    }
    for (int i = start; i < nf; ++i) {
      comb.push_back(i);
      gen(i + 1);
      comb.pop_back();
    }
  };
  gen(0);

  for (const auto& s : subsets) {
    std::vector<Vec> rows;
    for (int i : s) rows.push_back(normals[i]);
    if (numeric_rank(rows, m, 1e-12) < m - 1) continue;
    // Null direction: complete rows to an orthonormal set and take the
    // leftover direction via Gram-Schmidt against the span.
    std::vector<Vec> basis;
    for (auto r : rows) {
      for (const auto& q : basis) {
        double c = dot(r, q);
        for (int k = 0; k < m; ++k) r[k] -= c * q[k];
      }
      double nr = norm2(r);
      if (nr > 1e-12) {
        for (auto& v : r) v /= nr;
        basis.push_back(r);
      }
    }
    for (int axis = 0; axis < m && (int)basis.size() < m; ++axis) {
      Vec e(m, 0.0);
      e[axis] = 1.0;
      for (const auto& q : basis) {
        double c = dot(e, q);
        for (int k = 0; k < m; ++k) e[k] -= c * q[k];
      }
      double ne = norm2(e);
      if (ne > 1e-8) {
        for (auto& v : e) v /= ne;
        basis.push_back(e);
      }
    }
    if ((int)basis.size() < m) continue;
    const Vec& d = basis[m - 1];
    if (feasible_dir(d) || feasible_dir(scale(d, -1.0))) return true;
  }
  return false;
}

// All basic feasible points: solutions of m-subsets of facet equalities that
// satisfy every inequality. This is the consistency cross-check oracle.
std::vector<Vec> enumerate_h_vertices(const std::vector<Facet>& facets, int m, double tol) {
  int nf = (int)facets.size();
  std::vector<Vec> out;
  std::vector<int> comb;
  std::function<void(int)> gen = [&](int start) {
    if ((int)comb.size() == m) {
      Mat a(m * m);
      Vec b(m);
      for (int r = 0; r < m; ++r) {
        const Facet& f = facets[comb[r]];
        double len = norm2(f.normal);
        for (int c = 0; c < m; ++c) a[r * m + c] = f.normal[c] / len;
        b[r] = -f.offset / len;
      }
      Vec x;
      if (solve_linear(a, m, b, x, 1e-10)) {
        bool ok = true;
        for (const auto& f : facets) {
          double len = norm2(f.normal);
          if ((dot(f.normal, x) + f.offset) / len < -tol) {
            ok = false;
            break;
          }
        }
        if (ok) out.push_back(x);
      }
      return;
    }
    for (int i = start; i < nf; ++i) {
      comb.push_back(i);
      gen(i + 1);
      comb.pop_back();
    }
  };
  gen(0);
  // dedupe
  std::vector<Vec> uniq;
  for (const auto& v : out) {
    bool dup = false;
    for (const auto& u : uniq)
      if (norm_inf(sub(u, v)) <= 4.0 * tol) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(v);
  }
  return uniq;
}

}  // namespace

double Simplex::volume() const {
  int m = dim;
  Mat edges(m * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) edges[r * m + c] = vertices[r + 1][c] - vertices[0][c];
  double factorial = 1.0;
  for (int k = 2; k <= m; ++k) factorial *= k;
  return std::fabs(det_full(edges, m)) / factorial;
}

double Simplex::diameter() const {
  double d = 0.0;
  for (size_t i = 0; i < vertices.size(); ++i)
    for (size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, norm2(sub(vertices[i], vertices[j])));
  return d;
}

Polytope Polytope::validate(std::vector<Vec> vertices, std::vector<Facet> facets) {
  if (vertices.empty() || facets.empty())
    fail(ErrorCode::invalid_argument, "polytope needs vertices and facets");
  int m = (int)vertices[0].size();
  if (m < 1) fail(ErrorCode::degenerate, "dimension must be >= 1");
  if ((int)vertices.size() > kMaxVertices || (int)facets.size() > kMaxFacets)
    fail(ErrorCode::invalid_argument, "polytope too large");
  for (const auto& v : vertices)
    if ((int)v.size() != m) fail(ErrorCode::dimension_mismatch, "vertex dimension mismatch");
  for (const auto& f : facets) {
    if ((int)f.normal.size() != m) fail(ErrorCode::dimension_mismatch, "facet dimension mismatch");
    if (norm2(f.normal) < 1e-14) fail(ErrorCode::degenerate, "facet normal is zero");
  }
  if ((int)vertices.size() < m + 1)
    fail(ErrorCode::degenerate, "fewer than m+1 vertices");
  if ((int)facets.size() < m + 1)
    fail(ErrorCode::unbounded, "fewer than m+1 facets cannot bound R^m");

  Polytope p;
  p.dim_ = m;
  p.vertices_ = std::move(vertices);
  p.facets_ = std::move(facets);

  // Scale-aware tolerance: 1e-9 absolute, scaled by the polytope diameter.
  p.bbox_lo_.assign(m, 0.0);
  p.bbox_hi_.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    double lo = p.vertices_[0][k], hi = p.vertices_[0][k];
    for (const auto& v : p.vertices_) {
      lo = std::min(lo, v[k]);
      hi = std::max(hi, v[k]);
    }
    p.bbox_lo_[k] = lo;
    p.bbox_hi_[k] = hi;
  }
  double diag = norm2(sub(p.bbox_hi_, p.bbox_lo_));
  p.diameter_ = diag;
  p.coord_radius_ = std::max(norm_inf(p.bbox_lo_), norm_inf(p.bbox_hi_));
  p.tol_ = kBaseTol * std::max(1.0, diag);

  if (has_recession_direction(p.facets_, m, 1e-12))
    fail(ErrorCode::unbounded, "facet intersection has a recession direction");

  for (size_t i = 0; i < p.vertices_.size(); ++i)
    for (int j = 0; j < (int)p.facets_.size(); ++j)
      if (p.facet_residual(j, p.vertices_[i]) < -p.tol_)
        fail(ErrorCode::inconsistent,
             "vertex " + std::to_string(i) + " violates facet " + std::to_string(j));

  std::vector<int> all_ids(p.vertices_.size());
  for (size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = (int)i;
  if (affine_dim(p.vertices_, all_ids, m, p.tol_) < m)
    fail(ErrorCode::degenerate, "vertex set is not full-dimensional");

  // Cross-check: the facet intersection's vertex set must coincide with the
  // listed vertices.
  std::vector<Vec> hv = enumerate_h_vertices(p.facets_, m, p.tol_);
  if (hv.size() != p.vertices_.size())
    fail(ErrorCode::inconsistent,
         "facet intersection has " + std::to_string(hv.size()) + " vertices, " +
             std::to_string(p.vertices_.size()) + " listed");
  std::vector<bool> used(hv.size(), false);
  for (size_t i = 0; i < p.vertices_.size(); ++i) {
    bool matched = false;
    for (size_t j = 0; j < hv.size(); ++j) {
      if (!used[j] && norm_inf(sub(hv[j], p.vertices_[i])) <= 8.0 * p.tol_) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched)
      fail(ErrorCode::inconsistent,
           "listed vertex " + std::to_string(i) + " is not a vertex of the facet intersection");
  }

  // Full dimension also needs a strictly feasible point.
  Vec c = centroid_of(p.vertices_, all_ids, m);
  for (int j = 0; j < (int)p.facets_.size(); ++j)
    if (p.facet_residual(j, c) <= p.tol_)
      fail(ErrorCode::degenerate, "interior is empty (centroid not strictly feasible)");

  p.build_triangulation();
  return p;
}

double Polytope::facet_residual(int i, const Vec& x) const {
  const Facet& f = facets_[i];
  return (dot(f.normal, x) + f.offset) / norm2(f.normal);
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (int i = 0; i < (int)facets_.size(); ++i)
    if (facet_residual(i, x) < -tol) return false;
  return true;
}

bool Polytope::strictly_contains(const Vec& x) const {
  for (int i = 0; i < (int)facets_.size(); ++i)
    if (facet_residual(i, x) <= tol_) return false;
  return true;
}

bool Polytope::origin_interior() const { return strictly_contains(Vec(dim_, 0.0)); }

double Polytope::volume() const {
  KahanSum s;
  for (const auto& sx : simplices_) s.add(sx.volume());
  return s.value();
}

// Triangulation: recursive fan from face centroids over the face lattice,
// with a fixed lexicographic vertex ordering so the output does not depend
// on input order. A face that is already a simplex is emitted as-is; this
// makes an interval a single 1-simplex and a square the 4-triangle fan.
void Polytope::build_triangulation() {
  int m = dim_;

  // canonical facet order: by normalized normal then offset
  std::vector<int> forder(facets_.size());
  for (size_t i = 0; i < forder.size(); ++i) forder[i] = (int)i;
  auto facet_key = [&](int i) {
    Vec k = facets_[i].normal;
    double len = norm2(k);
    for (auto& v : k) v /= len;
    k.push_back(facets_[i].offset / len);
    return k;
  };
  std::sort(forder.begin(), forder.end(),
            [&](int a, int b) { return lex_less(facet_key(a), facet_key(b)); });

  std::vector<std::vector<int>> tight(facets_.size());
  for (int fi : forder) {
    for (int vi = 0; vi < (int)vertices_.size(); ++vi)
      if (std::fabs(facet_residual(fi, vertices_[vi])) <= tol_) tight[fi].push_back(vi);
  }

  using PointList = std::vector<Vec>;
  std::function<std::vector<PointList>(const std::vector<int>&, int)> tri =
      [&](const std::vector<int>& face, int k) -> std::vector<PointList> {
    std::vector<PointList> result;
    if ((int)face.size() == k + 1) {
      std::vector<int> ids = face;
      std::sort(ids.begin(), ids.end(),
                [&](int a, int b) { return lex_less(vertices_[a], vertices_[b]); });
      PointList s;
      for (int id : ids) s.push_back(vertices_[id]);
      result.push_back(std::move(s));
      return result;
    }
    Vec c = centroid_of(vertices_, face, m);
    std::set<std::vector<int>> seen;
    for (int fi : forder) {
      // subface = face cut by facet fi, must drop dimension by exactly one
      std::vector<int> sf;
      for (int id : face)
        if (std::binary_search(tight[fi].begin(), tight[fi].end(), id)) sf.push_back(id);
      if ((int)sf.size() == (int)face.size() || (int)sf.size() < k) continue;
      if (affine_dim(vertices_, sf, m, tol_) != k - 1) continue;
      if (!seen.insert(sf).second) continue;
      for (auto& sub : tri(sf, k - 1)) {
        sub.insert(sub.begin(), c);
        result.push_back(std::move(sub));
      }
    }
    return result;
  };

  std::vector<int> top(vertices_.size());
  for (size_t i = 0; i < top.size(); ++i) top[i] = (int)i;
  double scale_m = std::pow(std::max(1.0, diameter_), m);
  for (auto& pl : tri(top, m)) {
    Simplex s;
    s.dim = m;
    s.vertices = std::move(pl);
    if (s.volume() > 1e-12 * scale_m) simplices_.push_back(std::move(s));
  }
  if (simplices_.empty()) fail(ErrorCode::degenerate, "triangulation is empty");
}

}  // namespace toric
