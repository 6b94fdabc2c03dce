#include "rankrls/testmat.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rankrls/solver.hpp"

namespace rankrls {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double Rng::uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Matrix<double> gaussian(std::size_t n, std::size_t m, Rng& rng) {
  Matrix<double> g(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (auto& v : g.row(i)) v = rng.normal();
  return g;
}

template <class T>
Matrix<T> pascal(std::size_t n) {
  if (n == 0) throw DimensionError("pascal: n must be positive");
  Matrix<T> p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    p(i, 0) = T(1);
    p(0, i) = T(1);
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) p(i, j) = p(i - 1, j) + p(i, j - 1);
  return p;
}

template Matrix<double> pascal<double>(std::size_t);
template Matrix<Rational> pascal<Rational>(std::size_t);

Matrix<Rational> pascal_inverse(std::size_t n) {
  if (n == 0) throw DimensionError("pascal: n must be positive");
  // L^-1 has entries (-1)^(i+j) binomial(i, j); P^-1 = L^-T L^-1.
  Matrix<Rational> linv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class binom = 1;
    for (std::size_t j = 0; j <= i; ++j) {
      linv(i, j) = Rational(((i + j) % 2 == 0) ? binom : mpz_class(-binom), 1);
      binom = binom * static_cast<unsigned long>(i - j) / static_cast<unsigned long>(j + 1);
    }
  }
  return matmul(transpose(linv), linv);
}

bool pascal_exact_in_float(std::size_t n) {
  if (n == 0) return true;
  mpz_class top;
  mpz_bin_uiui(top.get_mpz_t(), 2 * (n - 1), n - 1);
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 2, 53);
  return top <= limit;
}

namespace {

void check_kahan_c(double c) {
  if (!(c > 0.0 && c < 1.0)) throw ConfigError("kahan: c must lie in (0, 1)");
}

}  // namespace

Matrix<double> kahan(std::size_t n, double c) {
  check_kahan_c(c);
  const double s = std::sqrt(1.0 - c * c);
  Matrix<double> k(n, n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = scale;
    for (std::size_t j = i + 1; j < n; ++j) k(i, j) = -c * scale;
    scale *= s;
  }
  return k;
}

Matrix<double> kahan_inverse(std::size_t n, double c) {
  check_kahan_c(c);
  const double s = std::sqrt(1.0 - c * c);
  Vector<double> inv_scale(n);
  double v = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    inv_scale[j] = v;
    v /= s;
  }
  Matrix<double> k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = inv_scale[i];
    double u = c;  // c (1 + c)^(j - i - 1)
    for (std::size_t j = i + 1; j < n; ++j) {
      k(i, j) = u * inv_scale[j];
      u *= 1.0 + c;
    }
  }
  return k;
}

Matrix<double> random_standardized(std::size_t n, std::size_t m, std::size_t r, std::uint64_t seed) {
  if (n == 0 || m == 0 || r == 0) throw DimensionError("random_standardized: sizes must be positive");
  if (r > std::min(n, m)) throw DimensionError("random_standardized: rank exceeds min(n, m)");
  Rng left_rng(seed, 0);
  Rng right_rng(seed, 1);
  const Matrix<double> left = gaussian(n, r, left_rng);
  const Matrix<double> right = gaussian(r, m, right_rng);
  return scaled(matmul(left, right), 1.0 / std::sqrt(static_cast<double>(r)));
}

Matrix<double> orthonormalize_columns(const Matrix<double>& a) {
  // Work on rows of the transpose so each column is contiguous.
  Matrix<double> q = transpose(a);
  for (std::size_t j = 0; j < q.rows(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const double proj = dot<double>(q.row(k), q.row(j));
        axpy<double>(-proj, q.row(k), q.row(j));
      }
    }
    const double norm = std::sqrt(dot<double>(q.row(j), q.row(j)));
    if (norm == 0.0) throw DimensionError("orthonormalize_columns: rank-deficient input");
    for (auto& v : q.row(j)) v /= norm;
  }
  return transpose(q);
}

UsvMatrix random_usv(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DimensionError("random_usv: n must be positive");
  Rng u_rng(seed, 0);
  Rng v_rng(seed, 1);
  UsvMatrix out;
  out.u = orthonormalize_columns(gaussian(5 * n, n, u_rng));
  out.v = orthonormalize_columns(gaussian(n, n, v_rng));
  out.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.s[i] = std::pow(2.0, static_cast<double>(i) / 2.0);

  Matrix<double> us = out.u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) us(i, j) *= out.s[j];
  out.a = matmul(us, transpose(out.v));

  Matrix<double> vs = out.v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vs(i, j) /= out.s[j];
  out.pinv = matmul(vs, transpose(out.u));
  return out;
}

PowerMatrix ill_conditioned_power(std::size_t n, std::uint64_t seed, unsigned power) {
  if (n == 0) throw DimensionError("ill_conditioned_power: n must be positive");
  if (power == 0) throw ConfigError("ill_conditioned_power: power must be positive");
  Rng rng(seed, 0);
  PowerMatrix out;
  out.base = gaussian(n, n, rng);
  out.a = out.base;
  for (unsigned p = 1; p < power; ++p) out.a = matmul(out.a, out.base);
  return out;
}

Family parse_family(std::string_view text) {
  if (text == "pascal") return Family::pascal;
  if (text == "kahan") return Family::kahan;
  if (text == "random" || text == "random-standardized") return Family::random_standardized;
  if (text == "usv" || text == "random-usv") return Family::random_usv;
  if (text == "ill" || text == "ill-conditioned-power") return Family::ill_conditioned_power;
  throw ConfigError("unknown matrix family '" + std::string(text) + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::pascal: return "pascal";
    case Family::kahan: return "kahan";
    case Family::random_standardized: return "random";
    case Family::random_usv: return "usv";
    case Family::ill_conditioned_power: return "ill";
  }
  return "?";
}

Matrix<double> generate(const MatrixSpec& spec) {
  switch (spec.family) {
    case Family::pascal: return pascal<double>(spec.n);
    case Family::kahan: return kahan(spec.n, spec.c);
    case Family::random_standardized: return random_standardized(spec.n, spec.m, spec.r, spec.seed);
    case Family::random_usv: return random_usv(spec.n, spec.seed).a;
    case Family::ill_conditioned_power: return ill_conditioned_power(spec.n, spec.seed, spec.power).a;
  }
  throw ConfigError("unknown matrix family");
}

}  // namespace rankrls
