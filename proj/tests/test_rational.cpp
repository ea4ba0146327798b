#include <doctest.h>

#include <random>

#include "chow/errors.hpp"
#include "chow/rational.hpp"

using namespace chow;

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7/21") == Rational(-1, 3));
  CHECK(parse_rational("+4/8") == Rational(1, 2));
  CHECK(to_string(ratio(6, 4)) == "3/2");
  CHECK(to_string(ratio(-10, 5)) == "-2");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "--1", "1.5", "3 /4", "4/-8"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (int i = 0; i < 500; ++i) {
    const Rational q = ratio(num(rng), den(rng));
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("binomial, factorial, power") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(power(Rational(-2), 5) == -32);
  CHECK(power(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(power(Rational(5), 0) == 1);

  // Pascal's rule as an oracle for the closed form.
  for (long n = 1; n <= 20; ++n)
    for (long k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("predicates") {
  CHECK(is_zero(ratio(0, 5)));
  CHECK(is_integer(ratio(8, 4)));
  CHECK_FALSE(is_integer(Rational(1, 3)));
}
