#include "wordlab/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace wordlab {

namespace mp = boost::multiprecision;

Rational::Rational(std::int64_t value) : value_(value) {}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = den < 0 ? mp::cpp_rational(-num, -den) : mp::cpp_rational(num, den);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: malformed '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("Rational: malformed '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rational: malformed '" + text + "'");
    }
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

BigInt Rational::num() const { return mp::numerator(value_); }
BigInt Rational::den() const { return mp::denominator(value_); }

bool Rational::is_zero() const { return value_ == 0; }
bool Rational::is_positive() const { return value_ > 0; }

BigInt Rational::floor() const {
  BigInt n = num(), d = den();
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

BigInt Rational::ceil() const {
  BigInt n = num(), d = den();
  BigInt q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::str() const { return num().str() + "/" + den().str(); }

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string to_decimal(const BigInt& value) { return value.str(); }

}  // namespace wordlab
