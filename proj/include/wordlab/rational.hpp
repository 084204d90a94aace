#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wordlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "num/den" or a plain integer.
  static Rational parse(const std::string& text);

  BigInt num() const;
  BigInt den() const;

  bool is_zero() const;
  bool is_positive() const;

  /// Smallest integer >= *this.
  BigInt ceil() const;
  /// Largest integer <= *this.
  BigInt floor() const;

  /// Human-readable only; never used for comparisons.
  double to_double() const;
  /// "num/den" in lowest terms, e.g. "1/144", "1/1", "-3/4".
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Decimal string of an arbitrary-precision integer.
std::string to_decimal(const BigInt& value);

}  // namespace wordlab
