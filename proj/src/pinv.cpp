#include "rankrls/pinv.hpp"

namespace rankrls {

template <class T>
PinvTracker<T>::PinvTracker(std::size_t m) : m_(m), pinv_t_(0, m) {}

template <class T>
void PinvTracker<T>::correct_and_append(const UpdateStep<T>& step) {
  const std::size_t n = pinv_t_.rows();
  const std::size_t r = step.z.size();
  for (std::size_t i = 0; i < n; ++i) {
    T b(0);
    for (std::size_t k = 0; k < r; ++k) b += b_(i, k) * step.z[k];
    if (is_zero(b)) continue;
    axpy<T>(-b, step.kalman_gain, pinv_t_.row(i));
  }
  pinv_t_.append_row(step.kalman_gain);
}

template <class T>
void PinvTracker<T>::update_independent(const UpdateStep<T>& step) {
  if (step.branch != Branch::independent) throw BranchError("independent update applied to a dependent observation");
  const std::size_t n = b_.rows();
  const std::size_t r = b_.cols();
  if (step.z.size() != r) throw BranchError("pseudoinverse tracker needs z = P^-1 gamma");
  correct_and_append(step);

  // B <- [[B, 0], [gamma^T or 0, 1/alpha]]
  Matrix<T> grown(n + 1, r + 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = b_.row(i);
    std::copy(src.begin(), src.end(), grown.row(i).begin());
  }
  if (step.new_row_uses_gamma) {
    for (std::size_t k = 0; k < r; ++k) grown(n, k) = step.proj.gamma[k];
  }
  grown(n, r) = step.inverse_alpha;
  b_ = std::move(grown);
}

template <class T>
void PinvTracker<T>::update_dependent(const UpdateStep<T>& step) {
  if (step.branch != Branch::dependent) throw BranchError("dependent update applied to an independent observation");
  if (step.z.size() != b_.cols()) throw BranchError("pseudoinverse tracker needs z = P^-1 gamma");
  correct_and_append(step);
  b_.append_row(step.proj.gamma);
}

// With w = C~^T z and d = 1 + gamma.z (both from the pre-update factors):
//   dependent:   V <- V - w w^T / d
//   independent: V <- V - w K^T - K w^T + d K K^T
// The independent rule is the same for every variant: the orthogonal P^-1
// extension contributes exactly the alpha-free terms.
template <class T>
void CovarianceTracker<T>::apply(const UpdateStep<T>& step) {
  const std::size_t m = v_.rows();
  const auto& w = step.dual_z;
  const auto& k = step.kalman_gain;
  if (w.size() != m) throw BranchError("covariance tracker needs C~^T z");
  if (step.branch == Branch::dependent) {
    const T inv = divide(T(1), step.one_plus_gz);
    for (std::size_t i = 0; i < m; ++i) {
      if (is_zero(w[i])) continue;
      const T wi = w[i] * inv;
      for (std::size_t j = i; j < m; ++j) v_(i, j) -= wi * w[j];
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      const T dki = step.one_plus_gz * k[i];
      for (std::size_t j = i; j < m; ++j) v_(i, j) += dki * k[j] - w[i] * k[j] - k[i] * w[j];
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) v_(j, i) = v_(i, j);
}

template <class T>
Matrix<T> pinv_from_scratch(const Matrix<T>& A, const SolverOptions& options) {
  Solver<T> solver(A.cols(), options);
  solver.track_pseudoinverse();
  const T zero(0);
  for (std::size_t i = 0; i < A.rows(); ++i) solver.update(A.row(i), zero);
  if (A.rows() == 0) return Matrix<T>(A.cols(), 0);
  return solver.pseudoinverse()->pinv();
}

template class PinvTracker<double>;
template class PinvTracker<Rational>;
template class CovarianceTracker<double>;
template class CovarianceTracker<Rational>;
template Matrix<double> pinv_from_scratch(const Matrix<double>&, const SolverOptions&);
template Matrix<Rational> pinv_from_scratch(const Matrix<Rational>&, const SolverOptions&);

}  // namespace rankrls
