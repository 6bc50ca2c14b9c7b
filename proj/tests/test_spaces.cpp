#include <doctest.h>

#include "daniell/spaces.hpp"

using namespace daniell;

namespace {

SeqFunction seq(std::vector<std::pair<std::int64_t, const char*>> terms) {
  std::vector<std::pair<std::int64_t, Rational>> raw;
  for (auto& [i, v] : terms) raw.emplace_back(i, rat_parse(v));
  return SeqFunction::from_terms(std::move(raw));
}

}  // namespace

TEST_CASE("counting space integral") {
  CHECK((seq_integral(seq({{1, "1"}, {3, "-2"}})) == rat(-1)));
  CHECK((seq_integral(SeqFunction()) == rat(0)));
  // 1/1 + 1/2 + 1/3 + 1/4 summed independently.
  Rational oracle(0);
  for (int k = 1; k <= 4; ++k) oracle += rat(1, k);
  CHECK((oracle == rat(25, 12)));
  CHECK((seq_integral(seq({{1, "1"}, {2, "1/2"}, {3, "1/3"}, {4, "1/4"}})) == oracle));
}

TEST_CASE("counting space canonical form merges duplicate indices") {
  const SeqFunction f = SeqFunction::from_terms({{2, rat(1)}, {2, rat(-1)}, {1, rat(3)}});
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].first == 1);
  CHECK((f.at(2) == rat(0)));
  CHECK_THROWS_AS(SeqFunction::from_terms({{0, rat(1)}}), std::invalid_argument);
}

TEST_CASE("finite space integral") {
  const auto w11 = SpaceDesc::finite({rat(1), rat(1)});
  CHECK((finite_space_integral(FiniteElem{w11.weights(), {rat(2), rat(3)}}) == rat(5)));

  const auto w00 = SpaceDesc::finite({rat(0), rat(0)});
  CHECK((finite_space_integral(FiniteElem{w00.weights(), {rat(9), rat(-7)}}) == rat(0)));

  const auto thirds = SpaceDesc::finite({rat(1, 2), rat(1, 3), rat(1, 6)});
  Rational oracle(0);
  for (const auto& x : *thirds.weights()) oracle += rat(6) * x;
  CHECK((oracle == rat(6)));
  CHECK((finite_space_integral(FiniteElem{thirds.weights(), {rat(6), rat(6), rat(6)}}) ==
         oracle));
}

TEST_CASE("space selector strings") {
  CHECK(SpaceDesc::parse("boxes:3").id() == "boxes:3");
  CHECK(SpaceDesc::parse("counting").id() == "counting");
  CHECK(SpaceDesc::parse("finite:1/2,1/3,1/6").id() == "finite:1/2,1/3,1/6");
  CHECK((SpaceDesc::parse("boxes:2") == SpaceDesc::boxes(2)));
  CHECK_THROWS_AS(SpaceDesc::parse("boxes:0"), std::invalid_argument);
  CHECK_THROWS_AS(SpaceDesc::parse("spheres"), std::invalid_argument);
  CHECK_THROWS_AS(SpaceDesc::parse("boxes:x"), std::invalid_argument);
}

TEST_CASE("element ops reject mixed spaces") {
  const Elem f = SeqFunction();
  const Elem g = SimpleFunction(1);
  CHECK_THROWS_AS(elem_add(f, g), std::invalid_argument);
  const auto wa = SpaceDesc::finite({rat(1)});
  const auto wb = SpaceDesc::finite({rat(2)});
  CHECK_THROWS_AS(
      elem_add(Elem(FiniteElem{wa.weights(), {rat(1)}}), Elem(FiniteElem{wb.weights(), {rat(1)}})),
      std::invalid_argument);
}

TEST_CASE("counting lattice ops treat absent indices as zero") {
  const Elem f = seq({{1, "2"}, {2, "-3"}});
  const Elem g = seq({{2, "1"}});
  const Elem mx = elem_max(f, g);
  const Elem mn = elem_min(f, g);
  CHECK((elem_eval(mx, EvalPoint(std::int64_t(1))) == rat(2)));
  CHECK((elem_eval(mx, EvalPoint(std::int64_t(2))) == rat(1)));
  CHECK((elem_eval(mn, EvalPoint(std::int64_t(1))) == rat(0)));  // min(2, absent 0)
  CHECK((elem_eval(mn, EvalPoint(std::int64_t(2))) == rat(-3)));
}

TEST_CASE("equality a.e. in a finite space ignores zero-weight atoms") {
  const auto space = SpaceDesc::finite({rat(1), rat(0)});
  const Elem f = FiniteElem{space.weights(), {rat(2), rat(5)}};
  const Elem g = FiniteElem{space.weights(), {rat(2), rat(-9)}};
  CHECK(elem_equal_ae(f, g));
  const Elem h = FiniteElem{space.weights(), {rat(3), rat(5)}};
  CHECK(!elem_equal_ae(f, h));
}

TEST_CASE("axioms probe passes on all three instances") {
  const Rational threshold = rat(1, 1000000);
  for (const auto& selector :
       {std::string("boxes:1"), std::string("boxes:2"), std::string("counting"),
        std::string("finite:1/2,1/3,1/6")}) {
    const CheckReport report =
        axioms_probe(SpaceDesc::parse(selector), 500, 7, threshold, 2000000);
    CAPTURE(selector);
    CHECK(report.verdict == Verdict::Pass);
    CHECK(report.iterations == 500);
  }
}

TEST_CASE("axioms probe condition II uses closed forms") {
  const CheckReport report =
      axioms_probe(SpaceDesc::boxes(1), 10, 3, rat(1, 1000000), 2000000);
  REQUIRE(report.trace.size() >= 2);
  // shrinking boxes reach the threshold at n = 20, flattening at n = 10^6 + 1
  CHECK(report.trace[0].find("n=20") != std::string::npos);
  CHECK(report.trace[1].find("n=1000001") != std::string::npos);
}

TEST_CASE("axioms probe reports inconclusive when the budget is too small") {
  const CheckReport report = axioms_probe(SpaceDesc::boxes(1), 10, 3, rat(1, 1000000), 100);
  CHECK(report.verdict == Verdict::Inconclusive);
  CHECK(report.bound.has_value());
}

TEST_CASE("random elements are valid and deterministic per seed") {
  for (const auto& selector :
       {std::string("boxes:1"), std::string("counting"), std::string("finite:1,2")}) {
    const SpaceDesc space = SpaceDesc::parse(selector);
    Rng a(42), b(42);
    for (int i = 0; i < 20; ++i) {
      const Elem x = random_element(a, space);
      const Elem y = random_element(b, space);
      CHECK(space.compatible(x));
      CHECK((x == y));
    }
  }
}
