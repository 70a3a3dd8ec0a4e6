#ifndef TORIC_NUMERIC_HPP
#define TORIC_NUMERIC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace toric {

using Vec = std::vector<double>;

// Dense square matrix, row-major, side known from context.
using Mat = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double s);

// Compensated accumulator; keeps bitwise-stable sums under a fixed add order.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// In-place Cholesky of a symmetric matrix (row-major, side n).
// Returns false if the matrix is not positive definite.
bool cholesky(Mat& a, int n);

// Solves A x = b given the Cholesky factor from cholesky().
Vec cholesky_solve(const Mat& chol, int n, const Vec& b);

// Gaussian elimination with partial pivoting; returns false when singular
// relative to pivot_tol.
bool solve_linear(Mat a, int n, Vec b, Vec& x, double pivot_tol);

// Rank of the row set {rows[i]} of length dim, with a scale-aware threshold.
int numeric_rank(std::vector<Vec> rows, int dim, double tol);

// FNV-1a 64-bit digest, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);

// Canonical shortest-17-significant-digit formatting used by reports/CSV.
std::string format_g17(double v);

// Uniform double in [0,1) from the top 53 bits of the engine output, so the
// stream does not depend on the standard library's distribution internals.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace toric

#endif
