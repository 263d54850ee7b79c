#include <doctest.h>

#include <limits>

#include "coxkl/laurent.hpp"

using namespace coxkl;

TEST_SUITE("laurent") {
  TEST_CASE("parse and print round trip") {
    for (const char* s : {"v^3+v", "0", "v^2+1", "3", "-v", "v^-4-7*v^-9", "1-2*v^-1"}) {
      CHECK(LaurentPoly::parse(s).to_string() == s);
    }
    CHECK(LaurentPoly::parse(" v ^ 2 + 1 ") == LaurentPoly({{2, 1}, {0, 1}}));
    CHECK(LaurentPoly::parse("2v^3") == LaurentPoly::monomial(2, 3));
    CHECK(LaurentPoly::parse("v+v") == LaurentPoly::monomial(2, 1));
    CHECK(LaurentPoly::parse("v-v").is_zero());
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(LaurentPoly::parse(""), ParseError);
    CHECK_THROWS_AS(LaurentPoly::parse("v^"), ParseError);
    CHECK_THROWS_AS(LaurentPoly::parse("x"), ParseError);
    CHECK_THROWS_AS(LaurentPoly::parse("2*"), ParseError);
    CHECK_THROWS_AS(LaurentPoly::parse("v v"), ParseError);
    CHECK_THROWS_AS(LaurentPoly::parse("99999999999999999999"), OverflowError);
  }

  TEST_CASE("ring operations and bar") {
    auto v = LaurentPoly::v();
    auto vi = LaurentPoly::v_inv();
    CHECK(v * vi == LaurentPoly(1));
    CHECK((v + vi) * (v + vi) == LaurentPoly({{2, 1}, {0, 2}, {-2, 1}}));
    CHECK((v - vi).bar() == vi - v);
    CHECK((v + vi).is_bar_invariant());
    CHECK(LaurentPoly::parse("v^3+v").eval_at_one() == 2);
    CHECK(LaurentPoly::parse("-v^2+3").min_coefficient() == -1);
    CHECK_FALSE(LaurentPoly::parse("-v^2+3").has_nonnegative_coefficients());
    CHECK(LaurentPoly::parse("v^2+1").dilated(2) == LaurentPoly::parse("v^4+1"));
    CHECK(LaurentPoly::parse("v").shifted(-1) == LaurentPoly(1));
  }

  TEST_CASE("no stored zeros") {
    LaurentPoly p = LaurentPoly::parse("v+1");
    p -= LaurentPoly::parse("v");
    CHECK(p.size() == 1);
    CHECK(p.terms().count(1) == 0);
  }

  TEST_CASE("overflow is an error") {
    LaurentPoly big(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big + LaurentPoly(1), OverflowError);
    CHECK_THROWS_AS(big * LaurentPoly(2), OverflowError);
  }

  TEST_CASE("quantum numbers") {
    CHECK(quantum_integer(0).is_zero());
    CHECK(quantum_integer(3) == LaurentPoly::parse("v^2+1+v^-2"));
    CHECK(quantum_factorial(3) == LaurentPoly::parse("v^3+2*v+2*v^-1+v^-3"));
    CHECK(quantum_factorial<BigInt>(20).eval_at_one() == BigInt("2432902008176640000"));
  }
}
