#pragma once

// Scalar layer shared by the solver core: IEEE doubles and exact rationals.
//
// The solver templates are written once against ScalarTraits<T>. Only two
// instantiations exist: double and Rational.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rankrls {

enum class ScalarKind { float64, rational };

struct ScalarCapabilities {
  bool has_sqrt;
  std::optional<double> machine_epsilon;  // set iff the kind is a float kind
};

class ScalarError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Arbitrary-precision fraction, always held in canonical form: reduced,
// positive denominator, zero stored as 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}           // NOLINT(google-explicit-constructor)
  Rational(long v) : v_(v) {}          // NOLINT(google-explicit-constructor)
  Rational(long long v);               // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);

  // Exact binary expansion of a finite double.
  static Rational from_double(double d);
  // Accepts "p", "p/q", or a decimal literal such as "-1.25" / "3e-2".
  static Rational parse(std::string_view text);

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  // "p/q", or "p" when q = 1.
  std::string str() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.v_ = -a.v_;
    return r;
  }

  // mpq comparison is exact cross-multiplication.
  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarKind kind = ScalarKind::float64;
  static constexpr bool has_sqrt = true;
  static constexpr double machine_epsilon = std::numeric_limits<double>::epsilon();
  static constexpr const char* name = "f64";
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarKind kind = ScalarKind::rational;
  static constexpr bool has_sqrt = false;
  static constexpr const char* name = "rational";
};

template <class T>
concept FieldScalar = requires { ScalarTraits<T>::kind; };

template <class T>
ScalarCapabilities capabilities() {
  if constexpr (ScalarTraits<T>::has_sqrt) {
    return {true, ScalarTraits<T>::machine_epsilon};
  } else {
    return {false, std::nullopt};
  }
}

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& v) { return v.is_zero(); }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.to_double(); }

// Throws ScalarError on NaN/Inf. Rationals are always finite.
double check_finite(double v);
inline const Rational& check_finite(const Rational& v) { return v; }

double divide(double a, double b);
Rational divide(const Rational& a, const Rational& b);

double sqrt(double a);
// Always throws: rationals do not carry square roots.
Rational sqrt(const Rational& a);

template <class T>
T from_double(double d);
template <>
inline double from_double<double>(double d) { return d; }
template <>
inline Rational from_double<Rational>(double d) { return Rational::from_double(d); }

// Shortest round-trip decimal for doubles, "p/q" for rationals.
std::string format_scalar(double v);
inline std::string format_scalar(const Rational& v) { return v.str(); }

// Both kinds accept decimal and "p/q" text. A double parsed from "p/q" goes
// through the exact fraction and is truncated toward zero (mpq_get_d).
template <class T>
T parse_scalar(std::string_view text);

}  // namespace rankrls
