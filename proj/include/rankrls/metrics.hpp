#pragma once

// Reference numerics used to judge the solver: a one-sided Jacobi SVD, norms,
// the stability factor and residual error of a computed pseudoinverse, Penrose
// residuals, and an SVD-truncation minimum-norm least-squares oracle.

#include <array>
#include <limits>
#include <span>
#include <stdexcept>

#include "rankrls/matrix.hpp"

namespace rankrls {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SvdResult {
  Matrix<double> u;      // n x k; columns for zero singular values are zero
  Vector<double> sigma;  // k = min(n, m), nonincreasing
  Matrix<double> v;      // m x k
};

// Cyclic one-sided Jacobi. Stops once every pair's |u_p . u_q| is below
// 1e-14 * |u_p| |u_q|; throws ConvergenceError after 60 sweeps.
SvdResult svd_small(const Matrix<double>& a);

double two_norm(const Matrix<double>& a);
// sigma_1 / sigma_k, +infinity when sigma_k == 0. Throws for the zero matrix.
double cond2(const Matrix<double>& a);

// |A+_algo - A+_ref|_2 / (eps * |A+_ref|_2 * cond2(A))
double stability_factor(const Matrix<double>& pinv_algo, const Matrix<double>& pinv_ref,
                        const Matrix<double>& a,
                        double machine_eps = std::numeric_limits<double>::epsilon());

// |A+_algo A - I_m|_2 / (|A|_2 |A+_algo|_2). For wide inputs (n < m) the
// n x n side A A+_algo - I_n is used instead.
double residual_error(const Matrix<double>& pinv_algo, const Matrix<double>& a);

// Normalized residuals of the four Penrose equations:
//   |A X A - A| / |A|,  |X A X - X| / |X|,
//   |(A X)^T - A X| / |A|,  |(X A)^T - X A| / |X|
// A zero normalizer leaves the residual unnormalized.
std::array<double, 4> penrose_residuals(const Matrix<double>& a, const Matrix<double>& pinv);

// x = V S^+ U^T y, dropping singular values <= rcond * sigma_1.
// rcond < 0 selects eps * max(n, m).
Vector<double> oracle_min_norm_lstsq(const Matrix<double>& a, std::span<const double> y, double rcond = -1.0);

// V S^+ U^T with the same truncation rule.
Matrix<double> pinv_svd(const Matrix<double>& a, double rcond = -1.0);

}  // namespace rankrls
