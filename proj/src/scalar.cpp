#include "rankrls/scalar.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace rankrls {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  std::string buf(s);
  if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
  mpz_class z;
  if (buf.empty() || z.set_str(buf, 10) != 0) {
    throw ScalarError("invalid integer literal '" + std::string(s) + "'");
  }
  return z;
}

// Decimal literal "[-+]digits[.digits][e[-+]digits]" as an exact fraction.
Rational parse_decimal(std::string_view s) {
  std::string digits;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  long frac_digits = 0;
  bool seen_dot = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw ScalarError("invalid decimal literal '" + std::string(s) + "'");
      seen_dot = true;
    } else if (s[i] >= '0' && s[i] <= '9') {
      digits.push_back(s[i]);
      if (seen_dot) ++frac_digits;
    } else {
      throw ScalarError("invalid decimal literal '" + std::string(s) + "'");
    }
  }
  if (digits.empty()) throw ScalarError("invalid decimal literal '" + std::string(s) + "'");
  long exponent = 0;
  if (i < s.size()) {
    auto rest = s.substr(i + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || p != rest.data() + rest.size()) {
      throw ScalarError("invalid exponent in '" + std::string(s) + "'");
    }
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  return shift >= 0 ? Rational(num * scale, 1) : Rational(num, scale);
}

}  // namespace

Rational::Rational(long long v) : v_(mpz_class(std::to_string(v), 10)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw ScalarError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_double(double d) {
  check_finite(d);
  return Rational(mpq_class(d));
}

Rational Rational::parse(std::string_view text) {
  const auto s = trim(text);
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    return Rational(parse_integer(trim(s.substr(0, slash))), parse_integer(trim(s.substr(slash + 1))));
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s);
  return Rational(parse_integer(s), 1);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ScalarError("division by zero");
  v_ /= o.v_;
  return *this;
}

double check_finite(double v) {
  if (!std::isfinite(v)) throw ScalarError("non-finite floating-point value");
  return v;
}

double divide(double a, double b) {
  if (b == 0.0) throw ScalarError("division by zero");
  return check_finite(a / b);
}

Rational divide(const Rational& a, const Rational& b) { return a / b; }

double sqrt(double a) {
  if (!(a >= 0.0)) throw ScalarError("square root of a negative value");
  return std::sqrt(a);
}

Rational sqrt(const Rational&) {
  throw ScalarError("square root is not available for the rational scalar kind");
}

std::string format_scalar(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

template <>
double parse_scalar<double>(std::string_view text) {
  const auto s = trim(text);
  if (s.find('/') != std::string_view::npos) return check_finite(Rational::parse(s).to_double());
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || p != body.data() + body.size() || body.empty()) {
    throw ScalarError("invalid floating-point literal '" + std::string(s) + "'");
  }
  return check_finite(v);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  return Rational::parse(text);
}

}  // namespace rankrls
