#pragma once

#include <cstddef>

#include "rankrls/matrix.hpp"

namespace rankrls {

enum class Variant { general, orthogonal, orthonormal };
enum class Branch { independent, dependent };

template <class T>
struct ProjectionResult {
  Vector<T> gamma;        // coordinates in the stored basis (length r)
  Vector<T> gamma_r;      // rejection, g - C^T gamma (length m)
  T rejection_sq_norm;    // gamma_r . gamma_r
};

// Intermediates of one solver update, computed against the factors as they
// were before the update. Handed to attached trackers.
template <class T>
struct UpdateStep {
  Branch branch;
  const ProjectionResult<T>& proj;
  const Vector<T>& z;            // P^-1 gamma
  const T& one_plus_gz;          // 1 + gamma . z
  const Vector<T>& dual_z;       // C~^T z
  const Vector<T>& kalman_gain;  // K
  // Independent branch only: the new row of B is (gamma^T, 1/alpha) for the
  // orthogonal variants and (0, 1) for the general one.
  bool new_row_uses_gamma;
  const T& inverse_alpha;
};

}  // namespace rankrls
