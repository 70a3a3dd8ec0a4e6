#include "core/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace toric {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec scale(const Vec& a, double s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

bool cholesky(Mat& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
      a[j * n + i] = 0.0;
    }
  }
  return true;
}

Vec cholesky_solve(const Mat& chol, int n, const Vec& b) {
  Vec y(n), x(n);
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= chol[i * n + k] * y[k];
    y[i] = s / chol[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= chol[k * n + i] * x[k];
    x[i] = s / chol[i * n + i];
  }
  return x;
}

bool solve_linear(Mat a, int n, Vec b, Vec& x, double pivot_tol) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(a[perm[col] * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(a[perm[r] * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= pivot_tol) return false;
    std::swap(perm[col], perm[piv]);
    int pr = perm[col];
    for (int r = col + 1; r < n; ++r) {
      int rr = perm[r];
      double f = a[rr * n + col] / a[pr * n + col];
      if (f == 0.0) continue;
      a[rr * n + col] = 0.0;
      for (int c = col + 1; c < n; ++c) a[rr * n + c] -= f * a[pr * n + c];
      b[rr] -= f * b[pr];
    }
  }
  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    int ri = perm[i];
    double s = b[ri];
    for (int c = i + 1; c < n; ++c) s -= a[ri * n + c] * x[c];
    x[i] = s / a[ri * n + i];
  }
  return true;
}

int numeric_rank(std::vector<Vec> rows, int dim, double tol) {
  // Modified Gram-Schmidt with a drop threshold.
  std::vector<Vec> basis;
  for (auto& r : rows) {
    Vec v = r;
    for (const auto& q : basis) {
      double c = dot(v, q);
      for (int k = 0; k < dim; ++k) v[k] -= c * q[k];
    }
    double nv = norm2(v);
    if (nv > tol) {
      for (int k = 0; k < dim; ++k) v[k] /= nv;
      basis.push_back(v);
      if ((int)basis.size() == dim) break;
    }
  }
  return (int)basis.size();
}

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return std::string(buf);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

}  // namespace toric
