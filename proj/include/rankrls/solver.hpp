#pragma once

// Recursive minimum-norm least squares over a maintained rank factorization
// A = B C. The solver keeps C (r x m, rows span Im(A^T)),
// its dual C~ = (C C^T)^-1 C, P^-1 = (B^T B)^-1 and the current solution x.
// One observation costs O(m r); B itself is never stored here.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "rankrls/matrix.hpp"
#include "rankrls/scalar.hpp"
#include "rankrls/trackers.hpp"
#include "rankrls/update_step.hpp"

namespace rankrls {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Threshold used to decide whether an observation lies in the span of the
// stored basis.
class EpsPolicy {
 public:
  enum class Mode { automatic, fixed, exact_zero };

  // (m^2 r + m r + m) * machine epsilon, r = rank before the update.
  static EpsPolicy automatic() { return EpsPolicy(Mode::automatic, 0.0); }
  static EpsPolicy fixed(double eps);
  // Dependent iff the rejection is exactly zero. Rational scalars only.
  static EpsPolicy exact_zero() { return EpsPolicy(Mode::exact_zero, 0.0); }
  // "auto", "exact", or a nonnegative decimal.
  static EpsPolicy parse(std::string_view text);

  Mode mode() const { return mode_; }
  double eps(std::size_t m, std::size_t r) const;

 private:
  EpsPolicy(Mode mode, double value) : mode_(mode), value_(value) {}
  Mode mode_;
  double value_;
};

struct SolverOptions {
  Variant variant = Variant::general;
  EpsPolicy eps = EpsPolicy::automatic();
  // Scale applied to stored rejection rows in the orthogonal variant.
  double orthogonal_scale = 1.0;
};

Variant parse_variant(std::string_view text);
const char* variant_name(Variant v);

// Defaults per scalar kind: automatic eps for floats, exact-zero for rationals.
template <class T>
SolverOptions default_options() {
  SolverOptions o;
  if constexpr (ScalarTraits<T>::kind == ScalarKind::rational) o.eps = EpsPolicy::exact_zero();
  return o;
}

template <class T>
struct UpdateReport {
  Branch branch;
  Vector<T> kalman_gain;
  T predicted_residual;  // y - Gamma^T x before the update
  std::size_t new_rank;
};

template <class T>
class Solver {
 public:
  explicit Solver(std::size_t m) : Solver(m, default_options<T>()) {}
  Solver(std::size_t m, SolverOptions options);

  // gamma = C~ g, gamma_r = g - C^T gamma.
  ProjectionResult<T> project(std::span<const T> g) const;
  bool is_dependent(const ProjectionResult<T>& proj, std::span<const T> g) const;
  UpdateReport<T> update(std::span<const T> g, const T& y);

  std::span<const T> solution() const { return x_; }
  std::size_t rank() const { return basis_.rows(); }
  std::size_t observations() const { return n_; }
  std::size_t cols() const { return m_; }
  const SolverOptions& options() const { return options_; }
  // Threshold the next classification would use.
  double current_eps() const { return options_.eps.eps(m_, rank()); }

  const Matrix<T>& basis() const { return basis_; }
  const Matrix<T>& dual_basis() const { return dual_; }
  const Matrix<T>& inverse_gram() const { return p_inv_; }

  // Trackers must be attached before the first update.
  void track_pseudoinverse();
  void track_covariance();
  const PinvTracker<T>* pseudoinverse() const { return pinv_ ? &*pinv_ : nullptr; }
  const CovarianceTracker<T>* covariance() const { return cov_ ? &*cov_ : nullptr; }

 private:
  void grow_inverse_gram(std::span<const T> last_col, const T& corner);

  std::size_t m_;
  std::size_t n_ = 0;
  SolverOptions options_;
  Matrix<T> basis_;  // C
  Matrix<T> dual_;   // C~
  Matrix<T> p_inv_;  // P^-1
  Vector<T> x_;
  std::optional<PinvTracker<T>> pinv_;
  std::optional<CovarianceTracker<T>> cov_;
};

template <class T>
struct BatchResult {
  Vector<T> x;
  std::size_t rank;
};

// Folds update() over the rows of A in order.
template <class T>
BatchResult<T> solve_batch(const Matrix<T>& A, std::span<const T> Y, const SolverOptions& options);

extern template class Solver<double>;
extern template class Solver<Rational>;
extern template BatchResult<double> solve_batch(const Matrix<double>&, std::span<const double>,
                                                const SolverOptions&);
extern template BatchResult<Rational> solve_batch(const Matrix<Rational>&, std::span<const Rational>,
                                                  const SolverOptions&);

}  // namespace rankrls
