#include <doctest.h>

#include "daniell/rational.hpp"

using namespace daniell;

TEST_CASE("rational parse and format round-trip in lowest terms") {
  CHECK(rat_str(rat_parse("2/6")) == "1/3");
  CHECK(rat_str(rat_parse("-4/8")) == "-1/2");
  CHECK(rat_str(rat_parse("7")) == "7");
  CHECK(rat_str(rat_parse("+3/9")) == "1/3");
  CHECK(rat_str(rat_parse("0/5")) == "0");
  CHECK((rat_parse("1/3") + rat_parse("1/6") == rat(1, 2)));
}

TEST_CASE("rational parse rejects malformed input") {
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("powers") {
  CHECK((pow2(10) == rat(1024)));
  CHECK((pow2(-3) == rat(1, 8)));
  CHECK((pow2(0) == rat(1)));
  CHECK((rat_pow(rat(-1, 2), 3) == rat(-1, 8)));
  CHECK((rat_pow(rat(5), 0) == rat(1)));
  CHECK_THROWS_AS(rat_pow(rat(2), -1), std::invalid_argument);
}

TEST_CASE("exact arithmetic has no drift") {
  Rational sum(0);
  for (int i = 1; i <= 200; ++i) sum += rat(1, i) - rat(1, i + 1);
  CHECK((sum == rat(200, 201)));
}
