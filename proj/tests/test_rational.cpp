#include "doctest.h"

#include "rftt/rational.h"

using rftt::Rational;

TEST_CASE("rational canonical form") {
  Rational r(6, -4);
  CHECK(r.num_str() == "-3");
  CHECK(r.den_str() == "2");
  CHECK(r.to_string() == "-3/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational(4, 2).is_integer());
  CHECK(Rational(0, 5).is_zero());
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 2) * Rational(2, 3) == third);
  CHECK(Rational(1) / Rational(3) == third);
  CHECK(-third < Rational(0));
  CHECK(rftt::max(third, Rational(1, 2)) == Rational(1, 2));
  CHECK_THROWS(Rational(1) / Rational(0));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational decimal rendering rounds half away from zero") {
  CHECK(Rational(2, 3).to_decimal(6) == "0.666667");
  CHECK(Rational(1, 8).to_decimal(2) == "0.13");
  CHECK(Rational(-1, 8).to_decimal(2) == "-0.13");
  CHECK(Rational(5).to_decimal(3) == "5.000");
}

TEST_CASE("rational strings round-trip") {
  const Rational r = Rational::from_strings("123456789012345678901234567890", "10");
  CHECK(r.den_str() == "1");
  CHECK(r.num_str() == "12345678901234567890123456789");
  CHECK_THROWS(r.num_i64());
  CHECK(Rational(7, 3).num_i64() == 7);
}

TEST_CASE("common denominator") {
  std::vector<Rational> v{Rational(1, 4), Rational(5, 6), Rational(2)};
  CHECK(rftt::common_denominator(v.data(), v.data() + v.size()) == 12);
}
