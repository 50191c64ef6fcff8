#include <sstream>

#include "doctest.h"
#include "spinchain/rational.hpp"

using spinchain::Rational;

TEST_CASE("rationals normalize on construction") {
  CHECK(Rational{2, 4} == Rational{1, 2});
  CHECK(Rational{-2, 4} == Rational{-1, 2});
  CHECK(Rational{2, -4} == Rational{-1, 2});  // sign moves to numerator
  CHECK(Rational{0, 7} == Rational{0});
  CHECK(Rational{0, -7}.den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic") {
  const Rational a{1, 6}, b{1, 10};
  CHECK(a + b == Rational{4, 15});
  CHECK(a - b == Rational{1, 15});
  CHECK(a * b == Rational{1, 60});
  CHECK(a / b == Rational{5, 3});
  CHECK(-a == Rational{-1, 6});
  CHECK(a != b);
  CHECK(Rational{7, 3} + Rational{-7, 3} == Rational{0});
  CHECK(Rational{4589, 49152}.num() == 4589);  // already coprime
  CHECK(Rational{1, 2}.to_double() == 0.5);
}

TEST_CASE("rational printing") {
  std::ostringstream os;
  os << Rational{-7, 64} << ' ' << Rational{3} << ' ' << Rational{6, 3};
  CHECK(os.str() == "-7/64 3 2");
}

TEST_CASE("rational overflow is an error, not a wrap") {
  const Rational big{(1LL << 62), 1};
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big + big, std::overflow_error);
}
