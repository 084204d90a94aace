#pragma once

#include "wordlab/rational.hpp"

namespace wordlab::bounds {

/// The explicit bound functions evaluated at one rho. f == f1 * f2 exactly.
struct BoundTriple {
  Rational rho;
  Rational f1;
  Rational f2;
  Rational f;
};

/// ceil(2 / rho), computed on integers as ceil(2*den / num).
/// Throws DomainError unless 0 < rho <= 1.
BigInt ceil_two_over(const Rational& rho);

/// min{ rho^2 / (12 c), rho^3 / (4 c) } with c = ceil(2/rho).
Rational f1(const Rational& rho);

/// rho / (c (c + 1)) with c = ceil(2/rho).
Rational f2(const Rational& rho);

BoundTriple f(const Rational& rho);

/// eps / (2 - eps) with eps = f1(rho) f2(rho): the guaranteed commuting
/// probability of a group whose multiplication agrees with a homomorphism
/// G^2 -> G on a rho-fraction of pairs.
Rational commuting_bound(const Rational& rho);

/// True iff the rho^3 / (4c) branch is the one attaining the minimum in f1
/// (strictly smaller, or tied).
bool f1_uses_cubic_branch(const Rational& rho);

}  // namespace wordlab::bounds
