#pragma once

// Optional state layered on a Solver. A tracker only sees the intermediates
// of each update (UpdateStep), so the solver pays for it only when attached.

#include <cstddef>

#include "rankrls/matrix.hpp"
#include "rankrls/scalar.hpp"
#include "rankrls/update_step.hpp"

namespace rankrls {

class BranchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Maintains A^+ (m x n) and the left factor B (n x r). O(m n) per update.
//
// Both branches share one shape: A^+ <- [A^+ | 0] + K (-b^T, 1) with b = B z,
// where K is the solver's Kalman gain for that observation.
template <class T>
class PinvTracker {
 public:
  explicit PinvTracker(std::size_t m);

  void update_independent(const UpdateStep<T>& step);
  void update_dependent(const UpdateStep<T>& step);
  void apply(const UpdateStep<T>& step) {
    step.branch == Branch::independent ? update_independent(step) : update_dependent(step);
  }

  // m x n
  Matrix<T> pinv() const { return transpose(pinv_t_); }
  // n x r
  const Matrix<T>& left_factor() const { return b_; }
  std::size_t observations() const { return pinv_t_.rows(); }

 private:
  void correct_and_append(const UpdateStep<T>& step);

  std::size_t m_;
  Matrix<T> pinv_t_;  // (A^+)^T, n x m, so a new column of A^+ is a row append
  Matrix<T> b_;
};

// Maintains V = A^+ (A^+)^T = C~^T P^-1 C~ in O(m^2) per update.
template <class T>
class CovarianceTracker {
 public:
  explicit CovarianceTracker(std::size_t m) : v_(m, m) {}

  void apply(const UpdateStep<T>& step);
  const Matrix<T>& covariance() const { return v_; }

 private:
  Matrix<T> v_;
};

extern template class PinvTracker<double>;
extern template class PinvTracker<Rational>;
extern template class CovarianceTracker<double>;
extern template class CovarianceTracker<Rational>;

}  // namespace rankrls
