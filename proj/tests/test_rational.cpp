#include <doctest.h>

#include "plurality/errors.hpp"
#include "plurality/rational.hpp"

using namespace plurality;

TEST_CASE("parse_rational accepts fractions and exact decimals") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("-.25") == Rational(-1, 4));
  CHECK(parse_rational("1.5e-2") == Rational(3, 200));
  CHECK(parse_rational(" 2/6 ") == Rational(1, 3));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1..2"), ParseError);
  CHECK_THROWS_AS(parse_rational("."), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
}

TEST_CASE("to_string is canonical") {
  Rational half(2, 4);
  half.canonicalize();
  CHECK(to_string(half) == "1/2");
  CHECK(to_string(Rational(-3, 1)) == "-3");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(parse_rational(to_string(Rational(-22, 7))) == Rational(-22, 7));
}
