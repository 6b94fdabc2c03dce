#include "rankrls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rankrls {

EpsPolicy EpsPolicy::fixed(double eps) {
  if (!std::isfinite(eps) || eps < 0.0) throw ConfigError("eps must be a finite nonnegative number");
  return EpsPolicy(Mode::fixed, eps);
}

EpsPolicy EpsPolicy::parse(std::string_view text) {
  if (text == "auto") return automatic();
  if (text == "exact") return exact_zero();
  try {
    return fixed(parse_scalar<double>(text));
  } catch (const ScalarError&) {
    throw ConfigError("eps must be 'auto', 'exact' or a number, got '" + std::string(text) + "'");
  }
}

double EpsPolicy::eps(std::size_t m, std::size_t r) const {
  switch (mode_) {
    case Mode::automatic: {
      const double md = static_cast<double>(m);
      const double rd = static_cast<double>(r);
      return (md * md * rd + md * rd + md) * ScalarTraits<double>::machine_epsilon;
    }
    case Mode::fixed:
      return value_;
    case Mode::exact_zero:
      return 0.0;
  }
  return 0.0;
}

Variant parse_variant(std::string_view text) {
  if (text == "general") return Variant::general;
  if (text == "orthogonal") return Variant::orthogonal;
  if (text == "orthonormal") return Variant::orthonormal;
  throw ConfigError("unknown variant '" + std::string(text) + "'");
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::general: return "general";
    case Variant::orthogonal: return "orthogonal";
    case Variant::orthonormal: return "orthonormal";
  }
  return "?";
}

template <class T>
Solver<T>::Solver(std::size_t m, SolverOptions options) : m_(m), options_(options), x_(m, T(0)) {
  if (m == 0) throw ConfigError("a solver needs at least one regressor");
  const bool exact = options_.eps.mode() == EpsPolicy::Mode::exact_zero;
  if constexpr (ScalarTraits<T>::kind == ScalarKind::rational) {
    if (!exact) throw ConfigError("rational scalars require the exact-zero eps policy");
  } else {
    if (exact) throw ConfigError("the exact-zero eps policy is only valid for rational scalars");
  }
  if (options_.variant == Variant::orthonormal && !ScalarTraits<T>::has_sqrt) {
    throw ConfigError(std::string("the orthonormal variant needs square roots, unavailable for ") +
                      ScalarTraits<T>::name + " scalars");
  }
  if (options_.variant == Variant::orthogonal &&
      (!std::isfinite(options_.orthogonal_scale) || options_.orthogonal_scale == 0.0)) {
    throw ConfigError("orthogonal scale must be finite and nonzero");
  }
  basis_.set_cols_if_empty(m);
  dual_.set_cols_if_empty(m);
}

template <class T>
ProjectionResult<T> Solver<T>::project(std::span<const T> g) const {
  if (g.size() != m_) {
    throw DimensionError("observation has length " + std::to_string(g.size()) + ", expected " +
                         std::to_string(m_));
  }
  const std::size_t r = rank();
  ProjectionResult<T> p{Vector<T>(r), Vector<T>(g.begin(), g.end()), T(0)};
  for (std::size_t i = 0; i < r; ++i) p.gamma[i] = dot<T>(dual_.row(i), g);
  for (std::size_t i = 0; i < r; ++i) axpy<T>(-p.gamma[i], basis_.row(i), p.gamma_r);
  if constexpr (!std::is_same_v<T, Rational>) {
    // Reproject once: a single pass leaves rejections of dependent rows well
    // above the roundoff threshold when the basis is far from orthogonal.
    for (std::size_t i = 0; i < r; ++i) {
      const T d = dot<T>(dual_.row(i), p.gamma_r);
      p.gamma[i] += d;
      axpy<T>(-d, basis_.row(i), p.gamma_r);
    }
  }
  p.rejection_sq_norm = dot<T>(p.gamma_r, p.gamma_r);
  return p;
}

template <class T>
bool Solver<T>::is_dependent(const ProjectionResult<T>& proj, std::span<const T> g) const {
  if (is_zero(proj.rejection_sq_norm)) return true;
  // A full basis spans everything; any rejection left is roundoff.
  if (rank() == m_) return true;
  if (options_.eps.mode() == EpsPolicy::Mode::exact_zero) return false;
  const double eps = current_eps();
  const double eps2 = eps * eps;
  const double rej2 = to_double(proj.rejection_sq_norm);
  double scale2 = to_double(dot<T>(g, g));
  if constexpr (!std::is_same_v<T, Rational>) {
    // The rejection is computed as g - C^T gamma; when that sum cancels
    // heavily its roundoff tracks sum |gamma_i| |c_i|, not |g|.
    double spread = 0.0;
    for (std::size_t i = 0; i < proj.gamma.size(); ++i) {
      spread += std::abs(proj.gamma[i]) * std::sqrt(dot<T>(basis_.row(i), basis_.row(i)));
    }
    scale2 = std::max(scale2, spread * spread);
  }
  return rej2 < eps2 || rej2 < eps2 * scale2;
}

template <class T>
void Solver<T>::grow_inverse_gram(std::span<const T> last_col, const T& corner) {
  const std::size_t r = p_inv_.rows();
  Matrix<T> grown(r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    auto src = p_inv_.row(i);
    auto dst = grown.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
    grown(i, r) = last_col[i];
    grown(r, i) = last_col[i];
  }
  grown(r, r) = corner;
  p_inv_ = std::move(grown);
}

template <class T>
UpdateReport<T> Solver<T>::update(std::span<const T> g, const T& y) {
  if (g.size() != m_) {
    throw DimensionError("observation has length " + std::to_string(g.size()) + ", expected " +
                         std::to_string(m_));
  }
  for (const T& v : g) check_finite(v);
  check_finite(y);

  const std::size_t r = rank();
  const Variant variant = options_.variant;
  const ProjectionResult<T> proj = project(g);
  const T residual = y - dot<T>(g, x_);
  const bool dependent = is_dependent(proj, g);
  const bool tracking = pinv_.has_value() || cov_.has_value();

  // z = P^-1 gamma is needed by the dependent branch, by the orthogonal
  // variants' P^-1 extension, and by the trackers.
  Vector<T> z;
  T one_plus_gz(1);
  if (dependent || tracking || variant != Variant::general) {
    z = matvec<T>(p_inv_, proj.gamma);
    one_plus_gz += dot<T>(proj.gamma, z);
  }

  Vector<T> dual_z;
  if (dependent || cov_) {
    dual_z.assign(m_, T(0));
    for (std::size_t i = 0; i < r; ++i) axpy<T>(z[i], dual_.row(i), dual_z);
  }

  Vector<T> gain;
  if (dependent) {
    const T inv = divide(T(1), one_plus_gz);
    gain = dual_z;
    for (auto& v : gain) v *= inv;
  } else {
    const T inv = divide(T(1), proj.rejection_sq_norm);
    gain = proj.gamma_r;
    for (auto& v : gain) v *= inv;
  }

  T alpha(1);
  T inv_alpha(1);
  if (!dependent && variant != Variant::general) {
    if (variant == Variant::orthonormal) {
      if constexpr (ScalarTraits<T>::has_sqrt) {
        inv_alpha = sqrt(proj.rejection_sq_norm);
        alpha = divide(T(1), inv_alpha);
      }
    } else {
      alpha = from_double<T>(options_.orthogonal_scale);
      inv_alpha = divide(T(1), alpha);
    }
  }

  if (tracking) {
    const UpdateStep<T> step{dependent ? Branch::dependent : Branch::independent,
                             proj,
                             z,
                             one_plus_gz,
                             dual_z,
                             gain,
                             variant != Variant::general,
                             inv_alpha};
    if (pinv_) pinv_->apply(step);
    if (cov_) cov_->apply(step);
  }

  if (dependent) {
    // Sherman-Morrison downdate of P^-1; C and C~ are unchanged.
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i; j < r; ++j) {
        const T d = divide(z[i] * z[j], one_plus_gz);
        p_inv_(i, j) -= d;
        if (j != i) p_inv_(j, i) -= d;
      }
    }
  } else if (variant == Variant::general) {
    for (std::size_t i = 0; i < r; ++i) axpy<T>(-proj.gamma[i], gain, dual_.row(i));
    dual_.append_row(gain);
    basis_.append_row(g);
    grow_inverse_gram(Vector<T>(r, T(0)), T(1));
  } else {
    Vector<T> row = proj.gamma_r;
    for (auto& v : row) v *= alpha;
    basis_.append_row(row);
    if (variant == Variant::orthonormal) {
      dual_.append_row(row);
    } else {
      Vector<T> dual_row = gain;
      for (auto& v : dual_row) v *= inv_alpha;
      dual_.append_row(dual_row);
    }
    Vector<T> last_col(r);
    for (std::size_t i = 0; i < r; ++i) last_col[i] = -alpha * z[i];
    grow_inverse_gram(last_col, alpha * alpha * one_plus_gz);
  }

  axpy<T>(residual, gain, x_);
  ++n_;
  return UpdateReport<T>{dependent ? Branch::dependent : Branch::independent, std::move(gain), residual,
                         rank()};
}

template <class T>
void Solver<T>::track_pseudoinverse() {
  if (n_ != 0) throw BranchError("trackers must be attached before the first update");
  if (!pinv_) pinv_.emplace(m_);
}

template <class T>
void Solver<T>::track_covariance() {
  if (n_ != 0) throw BranchError("trackers must be attached before the first update");
  if (!cov_) cov_.emplace(m_);
}

template <class T>
BatchResult<T> solve_batch(const Matrix<T>& A, std::span<const T> Y, const SolverOptions& options) {
  if (A.rows() != Y.size()) {
    throw DimensionError("matrix has " + std::to_string(A.rows()) + " rows but the right-hand side has " +
                         std::to_string(Y.size()) + " entries");
  }
  Solver<T> solver(A.cols(), options);
  for (std::size_t i = 0; i < A.rows(); ++i) solver.update(A.row(i), Y[i]);
  const auto x = solver.solution();
  return {Vector<T>(x.begin(), x.end()), solver.rank()};
}

template class Solver<double>;
template class Solver<Rational>;
template BatchResult<double> solve_batch(const Matrix<double>&, std::span<const double>, const SolverOptions&);
template BatchResult<Rational> solve_batch(const Matrix<Rational>&, std::span<const Rational>,
                                           const SolverOptions&);

}  // namespace rankrls
