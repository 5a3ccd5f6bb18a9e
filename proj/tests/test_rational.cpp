#include <catch_amalgamated.hpp>

#include <unordered_set>

#include "oracles.hpp"
#include "qfib/rational.hpp"
#include "qfib/scalar.hpp"

using qfib::Rational;

TEST_CASE("rational parsing", "[rational]") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-4") == Rational(-4));
  CHECK(Rational::parse(" 7/3 ").to_string() == "7/3");
  CHECK(Rational::parse("-2/4").to_string() == "-1/2");
  CHECK(Rational::parse("10/5").to_string() == "2");
  CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("rational arithmetic", "[rational]") {
  const Rational a(2, 3), b(-5, 7);
  CHECK(a + b == Rational(-1, 21));
  CHECK(a * b == Rational(-10, 21));
  CHECK(a / b == Rational(-14, 15));
  CHECK(a.pow(-2) == Rational(9, 4));
  CHECK(Rational(0).pow(0) == Rational(1));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).reciprocal(), std::domain_error);
  CHECK(b.abs() == Rational(5, 7));
  CHECK(b < a);
  CHECK(Rational(1, 3).to_double() == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("rational arithmetic stays exact for large values", "[rational]") {
  const Rational big = Rational(3, 2).pow(200);
  CHECK((big * big.reciprocal()) == Rational(1));
  CHECK(big.denominator() == qfib::BigInt(1) << 200);
}

TEST_CASE("rational hashing agrees with equality", "[rational]") {
  std::unordered_set<Rational> set{Rational(1, 2), Rational(2, 4), Rational(-1, 2)};
  CHECK(set.size() == 2);
}

TEST_CASE("field axioms hold on random rationals", "[rational][property]") {
  oracle::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const Rational a = gen.rational(-50, 50, 20), b = gen.rational(-50, 50, 20), c = gen.rational(-50, 50, 20);
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rational::parse(a.to_string()) == a);
  }
}

TEST_CASE("scalar helpers", "[scalar]") {
  CHECK(qfib::format_scalar(0.1) == "0.1");
  CHECK(qfib::format_scalar(Rational(-3, 4)) == "-3/4");
  CHECK(qfib::same_value(1.0, 1.0 + 1e-12, 1e-9));
  CHECK_FALSE(qfib::same_value(1.0, 1.001, 1e-9));
  CHECK(qfib::spow(Rational(2, 3), Rational(-2)) == Rational(9, 4));
  CHECK_THROWS_AS(qfib::spow(Rational(2), Rational(1, 2)), std::domain_error);
}

TEST_CASE("negative denominators are normalized", "[rational]") {
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, -1).to_string() == "-1");
}
