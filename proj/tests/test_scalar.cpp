#include "atm/scalar.hpp"

#include <doctest.h>

using namespace atm;

TEST_CASE("rational text is canonical num/den") {
  CHECK(format_rational(parse_rational("2/4")) == "1/2");
  CHECK(format_rational(parse_rational("-6/3")) == "-2/1");
  CHECK(format_rational(parse_rational("7")) == "7/1");
  CHECK(format_rational(parse_rational("0/5")) == "0/1");
  CHECK(parse_rational("3/9") == parse_rational("1/3"));
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
  CHECK_THROWS_AS(parse_rational("1/-2"), FormatError);
  CHECK_THROWS_AS(parse_rational("a/2"), FormatError);
  CHECK_THROWS_AS(parse_rational(""), FormatError);
  CHECK_THROWS_AS(parse_rational("1/"), FormatError);
}

TEST_CASE("decimals convert to the rational they denote") {
  CHECK(parse_rational_or_decimal("0.75") == Rational(3, 4));
  CHECK(parse_rational_or_decimal("1") == Rational(1));
  CHECK(parse_rational_or_decimal("-0.5") == Rational(-1, 2));
  CHECK(parse_rational_or_decimal("1e-3") == Rational(1, 1000));
  CHECK(parse_rational_or_decimal("2.5E2") == Rational(250));
  CHECK(parse_rational_or_decimal(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational_or_decimal("."), FormatError);
  CHECK_THROWS_AS(parse_rational_or_decimal("0.5x"), FormatError);
}

TEST_CASE("scalars keep their mode") {
  Scalar exact(Rational(1, 3));
  Scalar floating(0.25);
  CHECK(exact.is_exact());
  CHECK_FALSE(floating.is_exact());
  CHECK(exact.to_string() == "1/3");
  CHECK(floating.to_string() == "0.25");
  CHECK_THROWS_AS((void)(exact < floating), ModeMismatch);
  CHECK_THROWS_AS((void)exact.floating(), ModeMismatch);
  CHECK(Scalar(Rational(1, 2)) < Scalar(Rational(2, 3)));
  CHECK(parse_scalar("1/4", NumericMode::floating).floating() == 0.25);
  CHECK(parse_scalar("0.25", NumericMode::exact).exact() == Rational(1, 4));
}

TEST_CASE("float scalars must be finite") {
  CHECK_THROWS_AS(Scalar(std::numeric_limits<double>::infinity()), FormatError);
  CHECK_THROWS_AS(Scalar(std::numeric_limits<double>::quiet_NaN()), FormatError);
}
