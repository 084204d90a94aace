#include "wordlab/bounds.hpp"

#include <algorithm>

#include "wordlab/errors.hpp"

namespace wordlab::bounds {

namespace {

void require_unit_interval(const Rational& rho) {
  if (!rho.is_positive() || rho > Rational(1)) {
    throw DomainError("rho must lie in (0,1], got " + rho.str());
  }
}

}  // namespace

BigInt ceil_two_over(const Rational& rho) {
  require_unit_interval(rho);
  BigInt numer = 2 * rho.den();
  BigInt denom = rho.num();
  return (numer + denom - 1) / denom;
}

Rational f1(const Rational& rho) {
  const Rational c(ceil_two_over(rho));
  const Rational quadratic = rho * rho / (Rational(12) * c);
  const Rational cubic = rho * rho * rho / (Rational(4) * c);
  return std::min(quadratic, cubic);
}

Rational f2(const Rational& rho) {
  const Rational c(ceil_two_over(rho));
  return rho / (c * (c + Rational(1)));
}

BoundTriple f(const Rational& rho) {
  BoundTriple t{rho, f1(rho), f2(rho), {}};
  t.f = t.f1 * t.f2;
  return t;
}

Rational commuting_bound(const Rational& rho) {
  const Rational eps = f(rho).f;
  return eps / (Rational(2) - eps);
}

bool f1_uses_cubic_branch(const Rational& rho) {
  const Rational c(ceil_two_over(rho));
  return rho * rho * rho / (Rational(4) * c) <= rho * rho / (Rational(12) * c);
}

}  // namespace wordlab::bounds
