#pragma once

// Test-only reference computations, written without the solver.
//
// Exact oracle: A = B C with C the nonzero rows of rref(A) and B the pivot
// columns of A, then A+ = C^T (C C^T)^-1 (B^T B)^-1 B^T by Gauss-Jordan.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rankrls/matrix.hpp"
#include "rankrls/scalar.hpp"

namespace oracle {

using rankrls::Matrix;
using rankrls::Rational;
using rankrls::Vector;

struct Rref {
  Matrix<Rational> r;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

inline Rref rref(Matrix<Rational> a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const Rational inv = Rational(1) / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix<Rational> r(row, a.cols());
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  return {r, pivots};
}

inline std::size_t rank(const Matrix<Rational>& a) { return rref(a).pivots.size(); }

// Inverse of a nonsingular square matrix by Gauss-Jordan.
inline Matrix<Rational> inverse(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  Matrix<Rational> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Rational(1);
  }
  const Rref red = rref(aug);
  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.r(i, n + j);
  return inv;
}

inline Matrix<Rational> pinv(const Matrix<Rational>& a) {
  const Rref red = rref(a);
  const std::size_t r = red.pivots.size();
  if (r == 0) return Matrix<Rational>(a.cols(), a.rows());
  Matrix<Rational> b(a.rows(), r);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < r; ++k) b(i, k) = a(i, red.pivots[k]);
  const Matrix<Rational>& c = red.r;
  const Matrix<Rational> ct = rankrls::transpose(c);
  const Matrix<Rational> bt = rankrls::transpose(b);
  const Matrix<Rational> left = rankrls::matmul(ct, inverse(rankrls::matmul(c, ct)));
  const Matrix<Rational> right = rankrls::matmul(inverse(rankrls::matmul(bt, b)), bt);
  return rankrls::matmul(left, right);
}

// Solution of the nonsingular system m x = rhs by Gauss-Jordan.
inline Vector<Rational> solve(const Matrix<Rational>& m, const Vector<Rational>& rhs) {
  const std::size_t n = m.rows();
  Matrix<Rational> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  const Rref red = rref(aug);
  Vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = red.r(i, n);
  return x;
}

// A+ y = C^T (C C^T)^-1 (B^T B)^-1 B^T y, applied to the vector.
inline Vector<Rational> min_norm_solution(const Matrix<Rational>& a, const Vector<Rational>& y) {
  const Rref red = rref(a);
  const std::size_t r = red.pivots.size();
  if (r == 0) return Vector<Rational>(a.cols());
  Matrix<Rational> b(a.rows(), r);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < r; ++k) b(i, k) = a(i, red.pivots[k]);
  const Matrix<Rational>& c = red.r;
  const Matrix<Rational> bt = rankrls::transpose(b);
  const Vector<Rational> w = solve(rankrls::matmul(bt, b), rankrls::matvec<Rational>(bt, y));
  const Vector<Rational> v = solve(rankrls::matmul(c, rankrls::transpose(c)), w);
  return rankrls::matvec<Rational>(rankrls::transpose(c), v);
}

// n x m integer matrix of rank r (with high probability): (n x r)(r x m)
// with entries in [-k, k].
inline Matrix<Rational> integer_rank_matrix(std::size_t n, std::size_t m, std::size_t r, std::mt19937_64& g,
                                            int k = 3) {
  std::uniform_int_distribution<int> d(-k, k);
  Matrix<Rational> left(n, r), right(r, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) left(i, j) = Rational(d(g));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) right(i, j) = Rational(d(g));
  return rankrls::matmul(left, right);
}

inline Matrix<double> to_double(const Matrix<Rational>& a) {
  return rankrls::convert<double>(a, [](const Rational& v) { return v.to_double(); });
}

// max |a - b| / max(max |b|, floor)
inline double rel_err(std::span<const double> a, std::span<const double> b, double floor = 1e-300) {
  double num = 0.0, den = floor;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

inline double rel_err(const Matrix<double>& a, const Matrix<double>& b) { return rel_err(a.data(), b.data()); }

}  // namespace oracle
