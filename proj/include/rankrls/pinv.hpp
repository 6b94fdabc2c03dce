#pragma once

#include "rankrls/solver.hpp"
#include "rankrls/trackers.hpp"

namespace rankrls {

// Streams the rows of A through a solver with a pseudoinverse tracker and
// returns A^+ (m x n). The zero matrix maps to the zero m x n matrix.
template <class T>
Matrix<T> pinv_from_scratch(const Matrix<T>& A, const SolverOptions& options);

template <class T>
Matrix<T> pinv_from_scratch(const Matrix<T>& A) {
  return pinv_from_scratch(A, default_options<T>());
}

extern template Matrix<double> pinv_from_scratch(const Matrix<double>&, const SolverOptions&);
extern template Matrix<Rational> pinv_from_scratch(const Matrix<Rational>&, const SolverOptions&);

}  // namespace rankrls
