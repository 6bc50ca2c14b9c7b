#include <doctest.h>

#include "daniell/rng.hpp"
#include "daniell/simple_function.hpp"

using namespace daniell;

namespace {

Box box1(const char* a, const char* b) { return Box({rat_parse(a)}, {rat_parse(b)}); }
Point pt1(const char* x) { return Point{{rat_parse(x)}}; }

SimpleFunction sf(std::vector<std::pair<const char*, std::pair<const char*, const char*>>> terms) {
  std::vector<SimpleFunction::Term> raw;
  for (auto& [coef, side] : terms)
    raw.push_back({box1(side.first, side.second), rat_parse(coef)});
  return SimpleFunction::from_terms(1, std::move(raw));
}

SimpleFunction random_simple(Rng& rng, int dim, int max_terms) {
  std::vector<SimpleFunction::Term> terms;
  const std::int64_t n = rng.uniform(0, max_terms);
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<Rational> lo, hi;
    for (int k = 0; k < dim; ++k) {
      Rational a = rng.rational(4, 3);
      lo.push_back(a);
      hi.push_back(a + rng.positive_rational(3, 3));
    }
    terms.push_back({Box(std::move(lo), std::move(hi)), rng.rational(5, 4)});
  }
  return SimpleFunction::from_terms(dim, std::move(terms));
}

Point random_point(Rng& rng, int dim) {
  std::vector<Rational> c;
  for (int k = 0; k < dim; ++k) c.push_back(rng.rational(8, 6));
  return Point{std::move(c)};
}

}  // namespace

TEST_CASE("canonicalize splits overlaps and sums coefficients") {
  const SimpleFunction f = sf({{"1", {"0", "2"}}, {"1", {"0", "1"}}});
  REQUIRE(f.terms().size() == 2);
  CHECK((f.terms()[0].box == box1("0", "1")));
  CHECK((f.terms()[0].coef == rat(2)));
  CHECK((f.terms()[1].box == box1("1", "2")));
  CHECK((f.terms()[1].coef == rat(1)));
  // Pointwise oracle against the raw overlapping terms.
  Rng rng(11);
  for (int s = 0; s < 100; ++s) {
    const Point p = random_point(rng, 1);
    Rational raw(0);
    if (box1("0", "2").contains(p)) raw += 1;
    if (box1("0", "1").contains(p)) raw += 1;
    CHECK((evaluate(f, p) == raw));
  }
}

TEST_CASE("canonicalize is idempotent and cancels to zero") {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const SimpleFunction f = random_simple(rng, static_cast<int>(rng.uniform(1, 2)), 4);
    CHECK((SimpleFunction::from_terms(f.dim(), f.terms()) == f));
  }
  const SimpleFunction zero = sf({{"1", {"0", "1"}}, {"-1", {"0", "1"}}});
  CHECK(zero.is_zero());
  CHECK(zero.terms().empty());
  CHECK(zero.dim() == 1);
  const SimpleFunction dropped = sf({{"2", {"0", "1"}}, {"7", {"3", "3"}}});
  CHECK(dropped.terms().size() == 1);  // empty box dropped
}

TEST_CASE("evaluate honors semi-open membership") {
  const SimpleFunction f = sf({{"2", {"0", "1"}}});
  CHECK((evaluate(f, pt1("0")) == rat(2)));
  CHECK((evaluate(f, pt1("1")) == rat(0)));
  SimpleFunction g = SimpleFunction::from_terms(
      2, {{Box({rat(0), rat(0)}, {rat(1), rat(1)}), rat(5)}});
  CHECK((evaluate(g, Point{{rat(1, 2), rat(3, 4)}}) == rat(5)));
}

TEST_CASE("combine: sum, max, min worked examples") {
  const SimpleFunction sum = add(sf({{"2", {"0", "1"}}}), sf({{"3", {"1", "2"}}}));
  CHECK(sum.terms().size() == 2);
  CHECK((integral_simple(sum) == rat(5)));

  const SimpleFunction mx =
      combine(sf({{"1", {"0", "2"}}}), sf({{"2", {"1", "3"}}}), CombineOp::Max);
  REQUIRE(mx.terms().size() == 2);
  CHECK((mx.terms()[0].box == box1("0", "1")));
  CHECK((mx.terms()[0].coef == rat(1)));
  CHECK((mx.terms()[1].box == box1("1", "3")));
  CHECK((mx.terms()[1].coef == rat(2)));

  const SimpleFunction mn =
      combine(sf({{"1", {"0", "1"}}}), sf({{"-1", {"0", "1"}}}), CombineOp::Min);
  REQUIRE(mn.terms().size() == 1);
  CHECK((mn.terms()[0].coef == rat(-1)));
}

TEST_CASE("combine agrees with pointwise evaluation at random points") {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    const int dim = static_cast<int>(rng.uniform(1, 2));
    const SimpleFunction f = random_simple(rng, dim, 3);
    const SimpleFunction g = random_simple(rng, dim, 3);
    const SimpleFunction s = combine(f, g, CombineOp::Sum);
    const SimpleFunction mx = combine(f, g, CombineOp::Max);
    const SimpleFunction mn = combine(f, g, CombineOp::Min);
    for (int i = 0; i < 20; ++i) {
      const Point p = random_point(rng, dim);
      const Rational a = evaluate(f, p), b = evaluate(g, p);
      CHECK((evaluate(s, p) == a + b));
      CHECK((evaluate(mx, p) == std::max(a, b)));
      CHECK((evaluate(mn, p) == std::min(a, b)));
    }
  }
}

TEST_CASE("scale, absolute, sup_abs, support, clipping") {
  const SimpleFunction f = sf({{"2", {"0", "1"}}});
  CHECK(scale(f, rat(0)).is_zero());
  CHECK((scale(f, rat(-1)) == sf({{"-2", {"0", "1"}}})));
  CHECK((scale(sf({{"3", {"0", "2"}}}), rat(1, 3)) == sf({{"1", {"0", "2"}}})));

  CHECK((absolute(sf({{"-2", {"0", "1"}}})) == f));
  const SimpleFunction mixed = sf({{"1", {"0", "1"}}, {"-3", {"1", "2"}}});
  CHECK((absolute(mixed) == sf({{"1", {"0", "1"}}, {"3", {"1", "2"}}})));
  CHECK((absolute(f) == f));

  CHECK((sup_abs(sf({{"2", {"0", "1"}}, {"-5", {"1", "2"}}})) == rat(5)));
  CHECK((sup_abs(SimpleFunction(1)) == rat(0)));
  CHECK((sup_abs(sf({{"1/3", {"0", "9"}}})) == rat(1, 3)));

  const BoxSet supp = support(sf({{"2", {"0", "1"}}, {"3", {"1", "2"}}}));
  CHECK(supp.size() == 2);
  CHECK(support(SimpleFunction(1)).empty());

  CHECK((min_with_constant(sf({{"3", {"0", "1"}}}), rat(1)) == sf({{"1", {"0", "1"}}})));
  CHECK((min_with_constant(sf({{"1/2", {"0", "1"}}}), rat(1)) == sf({{"1/2", {"0", "1"}}})));
  CHECK((min_with_constant(sf({{"-2", {"0", "1"}}}), rat(1)) == sf({{"-2", {"0", "1"}}})));
  CHECK_THROWS_AS(min_with_constant(f, rat(0)), std::invalid_argument);
}

TEST_CASE("integral of canonical and non-canonical input") {
  CHECK((integral_simple(sf({{"2", {"0", "1"}}, {"3", {"1", "2"}}})) == rat(5)));
  // Linearity oracle: overlapping input integrates to 1*2 + 1*1.
  CHECK((integral_simple(sf({{"1", {"0", "2"}}, {"1", {"0", "1"}}})) == rat(3)));
  CHECK((integral_simple(SimpleFunction(1)) == rat(0)));
}

TEST_CASE("equal almost everywhere for simple functions") {
  const SimpleFunction f = sf({{"2", {"0", "1"}}});
  CHECK(equal_ae_simple(f, f));
  CHECK(equal_ae_simple(f, sf({{"2", {"0", "1"}}, {"7", {"3", "3"}}})));
  CHECK(!equal_ae_simple(f, sf({{"2", {"0", "1"}}, {"1", {"1", "2"}}})));
}

TEST_CASE("integral laws on random pairs") {
  Rng rng(14);
  for (int t = 0; t < 120; ++t) {
    const int dim = static_cast<int>(rng.uniform(1, 2));
    const SimpleFunction f = random_simple(rng, dim, 3);
    const SimpleFunction g = random_simple(rng, dim, 3);
    const Rational lambda = rng.rational(5, 3);
    CHECK((integral_simple(add(f, g)) == integral_simple(f) + integral_simple(g)));
    CHECK((integral_simple(scale(f, lambda)) == lambda * integral_simple(f)));
    CHECK((integral_simple(absolute(f)) >= 0));
    CHECK((rat_abs(integral_simple(f)) <= integral_simple(absolute(f))));
    CHECK(nonnegative(absolute(f)));
  }
}

TEST_CASE("Riesz identities hold as canonical-form equality") {
  Rng rng(15);
  const Rational half = rat(1, 2);
  for (int t = 0; t < 80; ++t) {
    const int dim = static_cast<int>(rng.uniform(1, 2));
    const SimpleFunction f = random_simple(rng, dim, 3);
    const SimpleFunction g = random_simple(rng, dim, 3);
    const SimpleFunction sum = add(f, g);
    const SimpleFunction absdiff = absolute(add(f, scale(g, rat(-1))));
    CHECK((combine(f, g, CombineOp::Max) == scale(add(sum, absdiff), half)));
    CHECK((combine(f, g, CombineOp::Min) == scale(add(sum, scale(absdiff, rat(-1))), half)));
    CHECK((combine(f, f, CombineOp::Max) == f));
    CHECK((absolute(f) == combine(f, scale(f, rat(-1)), CombineOp::Max)));
  }
}
