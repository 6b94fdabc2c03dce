#pragma once

// Deterministic test-matrix families: Pascal, Kahan, random rank-r products,
// U S V^T with known pseudoinverse, and powers of Gaussian matrices.
//
// Random source: std::mt19937_64 (its output sequence is fixed by the C++
// standard) seeded per stream with splitmix64(seed ^ splitmix64(stream)).
// Normals come from the Box-Muller transform implemented here, so output
// does not depend on the standard library's distribution code.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "rankrls/matrix.hpp"
#include "rankrls/scalar.hpp"

namespace rankrls {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  // Uniform on (0, 1], 53 random bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

Matrix<double> gaussian(std::size_t n, std::size_t m, Rng& rng);

// Symmetric Pascal matrix, entry (i, j) = binomial(i + j, i) (0-based).
template <class T>
Matrix<T> pascal(std::size_t n);
// Exact inverse via P = L L^T with L the lower Pascal matrix.
Matrix<Rational> pascal_inverse(std::size_t n);
// True while every entry of pascal(n) is an integer exactly representable
// in a double (max entry <= 2^53).
bool pascal_exact_in_float(std::size_t n);

// Upper-triangular Kahan matrix diag(1, s, ..., s^(n-1)) * U, where U has a
// unit diagonal and -c above it; s = sqrt(1 - c^2).
Matrix<double> kahan(std::size_t n, double c);
// Closed form: (U^-1)_ij = c (1 + c)^(j-i-1) for j > i, K^-1 = U^-1 D^-1.
Matrix<double> kahan_inverse(std::size_t n, double c);

// n x m product of n x r and r x m standard-normal matrices scaled by
// 1/sqrt(r) so entries have unit variance; rank r with probability one.
Matrix<double> random_standardized(std::size_t n, std::size_t m, std::size_t r, std::uint64_t seed);

struct UsvMatrix {
  Matrix<double> u;      // 5n x n, orthonormal columns
  Vector<double> s;      // 1, 2^(1/2), ..., 2^((n-1)/2)
  Matrix<double> v;      // n x n orthogonal
  Matrix<double> a;      // U S V^T
  Matrix<double> pinv;   // V S^-1 U^T
};
UsvMatrix random_usv(std::size_t n, std::uint64_t seed);

struct PowerMatrix {
  Matrix<double> base;
  Matrix<double> a;  // base^power
};
PowerMatrix ill_conditioned_power(std::size_t n, std::uint64_t seed, unsigned power = 4);

// Modified Gram-Schmidt with one reorthogonalization pass on the columns.
Matrix<double> orthonormalize_columns(const Matrix<double>& a);

enum class Family { pascal, kahan, random_standardized, random_usv, ill_conditioned_power };
Family parse_family(std::string_view text);
const char* family_name(Family f);

struct MatrixSpec {
  Family family = Family::pascal;
  std::size_t n = 1;
  std::size_t m = 1;
  std::size_t r = 1;
  double c = 0.2;
  std::uint64_t seed = 0;
  unsigned power = 4;
};

Matrix<double> generate(const MatrixSpec& spec);

}  // namespace rankrls
