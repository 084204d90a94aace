#include "doctest.h"
#include "oracles.hpp"
#include "wordlab/errors.hpp"
#include "wordlab/group.hpp"

using namespace wordlab;

namespace {

Rational q(std::int64_t a, std::int64_t b) { return Rational(BigInt(a), BigInt(b)); }

std::uint32_t count_order(const GroupTable& g, std::uint32_t k) {
  std::uint32_t c = 0;
  for (Elem x = 0; x < g.order(); ++x) c += g.element_order(x) == k ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("build basic atoms") {
  CHECK(build_group("C1").order() == 1);
  const GroupTable s3 = build_group("S3");
  CHECK(s3.order() == 6);
  CHECK_FALSE(is_abelian(s3));
  const GroupTable klein = build_group("C2xC2");
  CHECK(klein.order() == 4);
  CHECK(count_order(klein, 2) == 3);
  CHECK(build_group("D4").order() == 8);
  CHECK(build_group("D1").order() == 2);
  CHECK(build_group("A4").order() == 12);
  CHECK(build_group("A5").order() == 60);
  CHECK(build_group("S1").order() == 1);
  CHECK(build_group("A2").order() == 1);
  CHECK(build_group("S4").order() == 24);
  CHECK(build_group("Q8").order() == 8);
  CHECK(build_group("C2xC2xC2x C2").order() == 16);
  CHECK(build_group(" C4 x C4 ").order() == 16);
}

TEST_CASE("group spec errors") {
  CHECK_THROWS_AS(build_group("Z4"), ParseError);
  CHECK_THROWS_AS(build_group("C0"), ParseError);
  CHECK_THROWS_AS(build_group("S9"), ParseError);
  CHECK_THROWS_AS(build_group("Q4"), ParseError);
  CHECK_THROWS_AS(build_group("C2x"), ParseError);
  CHECK_THROWS_AS(build_group("C2*C2"), ParseError);
  CHECK_THROWS_AS(build_group("perm:(1 2"), ParseError);
  CHECK_THROWS_AS(build_group("perm:(1 13)"), ParseError);
  CHECK_THROWS_AS(build_group("perm:(1 1)"), ParseError);
  CHECK_THROWS_AS(build_group("S7"), BudgetExceeded);  // 5040 > 2000
  CHECK(build_group("S7", 6000).order() == 5040);
  CHECK_THROWS_AS(build_group("C3000"), BudgetExceeded);
  CHECK_THROWS_AS(build_group("C50xC50"), BudgetExceeded);
}

TEST_CASE("closure from permutations") {
  CHECK(build_group("perm:(1 2)").order() == 2);
  const GroupTable d4 = build_group("perm:(1 2 3 4),(1 3)");
  CHECK(d4.order() == 8);
  CHECK(commuting_probability(d4) == q(5, 8));
  CHECK(closure({}, 3).order() == 1);
  CHECK(build_group("perm:(1 2)(3 4),(1 3)(2 4)").order() == 4);
  CHECK(build_group("perm:(1 2 3),(4 5)xC2").order() == 12);

  const Permutation cyc = parse_permutation("(1 2 3)", 3);
  CHECK(cyc == Permutation{1, 2, 0});
  // Cycles apply left to right.
  CHECK(parse_permutation("(1 2)(2 3)", 3) == Permutation{2, 0, 1});
  CHECK_THROWS(closure(std::vector<Permutation>{{0, 0}}, 2));
  CHECK(build_group("perm:(1 2 3)").label(0) == "()");
}

TEST_CASE("every constructor passes validation") {
  for (const char* spec : {"C1", "C7", "D5", "S4", "A4", "Q8", "C2xS3", "Q8xC2", "D8", "C16", "perm:(1 2 3 4 5),(1 2)"}) {
    const GroupTable g = build_group(spec);
    // Re-validating the raw table exercises the full axiom check.
    std::vector<Elem> table;
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b) table.push_back(g.mul(a, b));
    CHECK_NOTHROW(GroupTable(g.order(), table, {}));
    for (Elem a = 0; a < g.order(); ++a) {
      CHECK(g.mul(a, g.inv(a)) == 0);
      CHECK(g.order() % g.element_order(a) == 0);
    }
  }
}

TEST_CASE("invalid tables are rejected") {
  // Identity not at 0.
  CHECK_THROWS(GroupTable(2, {1, 0, 0, 1}, {}));
  // Latin square but not associative: the quasigroup x*y = -x-y mod 3 with identity forced fails.
  CHECK_THROWS(GroupTable(3, {0, 1, 2, 1, 1, 0, 2, 0, 2}, {}));
  CHECK_THROWS(GroupTable(2, {0, 1, 1, 5}, {}));
  // Loop of order 5 that is not a group (not associative).
  const std::vector<Elem> loop{0, 1, 2, 3, 4,  //
                               1, 0, 3, 4, 2,  //
                               2, 4, 0, 1, 3,  //
                               3, 2, 4, 0, 1,  //
                               4, 3, 1, 2, 0};
  CHECK_THROWS(GroupTable(5, loop, {}));
}

TEST_CASE("large tables use sampled associativity") {
  const GroupTable g = build_group("C5xS4");  // 120 > 64
  CHECK(g.order() == 120);
}

TEST_CASE("element powers") {
  const GroupTable c7 = build_group("C7");
  CHECK(c7.pow(3, 2) == 6);
  CHECK(c7.pow(3, -1) == 4);
  CHECK(c7.pow(3, 7000000001LL) == 3);
  CHECK(c7.pow(0, -5) == 0);
}

TEST_CASE("centralizers and commuting probability") {
  const GroupTable s3 = build_group("S3");
  CHECK(centralizer_size(s3, 0) == 6);
  for (Elem x = 1; x < 6; ++x) {
    std::uint64_t brute = 0;
    for (Elem h = 0; h < 6; ++h) brute += s3.mul(h, x) == s3.mul(x, h) ? 1 : 0;
    CHECK(centralizer_size(s3, x) == brute);
    CHECK(centralizer_size(s3, x) == (s3.element_order(x) == 2 ? 2U : 3U));
  }
  CHECK(commuting_probability(s3) == q(1, 2));
  CHECK(commuting_probability(build_group("C6")) == Rational(1));
  CHECK(commuting_probability(build_group("D4")) == q(5, 8));
  CHECK(commuting_probability(build_group("Q8")) == q(5, 8));
  CHECK(commuting_probability(build_group("A4")) == q(1, 3));
}

TEST_CASE("class count identity") {
  for (const char* spec : {"S3", "D4", "Q8", "A4", "S4", "D5", "C2xS3", "A5"}) {
    const GroupTable g = build_group(spec);
    const std::uint64_t pairs = oracle::commuting_pairs(g);
    CHECK(pairs == static_cast<std::uint64_t>(conjugacy_class_count(g)) * g.order());
    CHECK(commuting_probability(g) == q(conjugacy_class_count(g), g.order()));
  }
  CHECK(conjugacy_class_count(build_group("A5")) == 5);
  CHECK(conjugacy_class_count(build_group("S4")) == 5);
}

TEST_CASE("abelian predicate") {
  CHECK(is_abelian(build_group("C6")));
  CHECK_FALSE(is_abelian(build_group("S3")));
  const GroupTable q8 = build_group("Q8");
  CHECK_FALSE(is_abelian(q8));
  // ij = k, ji = -k
  CHECK(q8.label(q8.mul(1, 2)) == "k");
  CHECK(q8.label(q8.mul(2, 1)) == "-k");
  CHECK(is_abelian(build_group("C2xC4")));
  CHECK_FALSE(is_abelian(build_group("C2xS3")));
  CHECK(build_group("C3xC4").order() == 12);
}
