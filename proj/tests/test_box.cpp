#include <doctest.h>

#include "daniell/box.hpp"
#include "daniell/rng.hpp"

using namespace daniell;

namespace {

Box box1(const char* a, const char* b) {
  return Box({rat_parse(a)}, {rat_parse(b)});
}

Box box2(const char* ax, const char* bx, const char* ay, const char* by) {
  return Box({rat_parse(ax), rat_parse(ay)}, {rat_parse(bx), rat_parse(by)});
}

Point pt1(const char* x) { return Point{{rat_parse(x)}}; }
Point pt2(const char* x, const char* y) { return Point{{rat_parse(x), rat_parse(y)}}; }

Box random_box(Rng& rng, int dim) {
  std::vector<Rational> lo, hi;
  for (int k = 0; k < dim; ++k) {
    Rational a = rng.rational(4, 3);
    lo.push_back(a);
    hi.push_back(a + rng.positive_rational(3, 3));
  }
  return Box(std::move(lo), std::move(hi));
}

// Random exact partition by repeated axis splits.
std::pair<Box, std::vector<Box>> random_partition(Rng& rng, int dim, int cuts) {
  const Box whole = random_box(rng, dim);
  std::vector<Box> parts{whole};
  for (int c = 0; c < cuts; ++c) {
    const std::size_t pick =
        static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(parts.size()) - 1));
    const Box b = parts[pick];
    const int axis = static_cast<int>(rng.uniform(0, dim - 1));
    const Rational frac = rat(rng.uniform(1, 7), 8);
    const Rational at = b.lower()[axis] + frac * (b.upper()[axis] - b.lower()[axis]);
    if (at <= b.lower()[axis] || at >= b.upper()[axis]) continue;
    auto lo1 = b.lower(), hi1 = b.upper(), lo2 = b.lower(), hi2 = b.upper();
    hi1[axis] = at;
    lo2[axis] = at;
    parts[pick] = Box(lo1, hi1);
    parts.emplace_back(lo2, hi2);
  }
  return {whole, parts};
}

}  // namespace

TEST_CASE("box measure") {
  CHECK((measure(box2("0", "1", "0", "1")) == rat(1)));
  CHECK((measure(box2("1/3", "1/2", "0", "2")) == rat(1, 3)));
  CHECK((measure(box1("2", "1")) == rat(0)));  // empty box
  CHECK(box1("2", "1").is_empty());
  CHECK((box1("2", "1") == Box::empty(1)));
}

TEST_CASE("box intersection is semi-open") {
  CHECK((intersect(box1("0", "2"), box1("1", "3")) == box1("1", "2")));
  CHECK(intersect(box1("0", "1"), box1("1", "2")).is_empty());
  CHECK((intersect(box2("0", "4", "0", "4"), box2("1", "2", "1", "2")) ==
         box2("1", "2", "1", "2")));
  CHECK_THROWS_AS(intersect(box1("0", "1"), box2("0", "1", "0", "1")),
                  std::invalid_argument);
}

TEST_CASE("box membership at endpoints") {
  const Box b = box1("0", "1");
  CHECK(b.contains(pt1("0")));
  CHECK(!b.contains(pt1("1")));
  CHECK(b.contains(pt1("999/1000")));
}

TEST_CASE("box difference 1D") {
  const BoxSet d = box_diff(box1("0", "2"), box1("1", "2"));
  CHECK(d.size() == 1);
  CHECK((d.boxes()[0] == box1("0", "1")));
  CHECK(box_diff(box1("0", "2"), box1("0", "2")).empty());
}

TEST_CASE("box difference 2D: disjointness, coverage, additivity") {
  const Box a = box2("0", "2", "0", "2");
  const Box b = box2("0", "1", "0", "1");
  const BoxSet d = box_diff(a, b);
  // Slab peeling in fixed axis order: at most 2N pieces.
  CHECK(d.size() <= 4);
  CHECK(d.size() >= 2);
  CHECK((measure(d) == rat(3)));  // 4 - 1
  for (const auto& piece : d.boxes()) CHECK(boxes_disjoint(piece, b));
  // Dense rational grid: membership in a must equal membership in b plus
  // membership in exactly one piece of the difference.
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const Point p{{rat(2 * i + 1, 16), rat(2 * j + 1, 16)}};
      int hits = b.contains(p) ? 1 : 0;
      for (const auto& piece : d.boxes()) hits += piece.contains(p) ? 1 : 0;
      CHECK(hits == (a.contains(p) ? 1 : 0));
    }
  }
}

TEST_CASE("measure splits across intersection and difference") {
  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = static_cast<int>(rng.uniform(1, 3));
    const Box a = random_box(rng, dim);
    const Box b = random_box(rng, dim);
    CHECK((measure(a) == measure(intersect(a, b)) + measure(box_diff(a, b))));
  }
}

TEST_CASE("finite partition detection") {
  const Box whole = box1("0", "1");
  CHECK(is_finite_partition(BoxSet::of(1, {box1("0", "1/2"), box1("1/2", "1")}), whole));
  CHECK_THROWS_AS(BoxSet::of(1, {box1("0", "1/2"), box1("1/4", "1")}),
                  std::invalid_argument);  // overlapping family is not a BoxSet
  // Gap: geometric pieces sum to 7/8 != 1.
  const BoxSet gappy = BoxSet::of(1, {box1("0", "1/2"), box1("1/2", "3/4"), box1("3/4", "7/8")});
  Rational partial(0);
  for (int n = 1; n <= 3; ++n) partial += pow2(-n);
  CHECK((partial == rat(7, 8)));
  CHECK((measure(gappy) == partial));
  CHECK(!is_finite_partition(gappy, whole));
  // A part sticking out of the whole is not a partition either.
  CHECK(!is_finite_partition(BoxSet::of(1, {box1("0", "1/2"), box1("1/2", "9/8")}), whole));
}

TEST_CASE("random partitions are exact") {
  Rng rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = static_cast<int>(rng.uniform(1, 3));
    const auto [whole, parts] = random_partition(rng, dim, 6);
    Rational total(0);
    for (const auto& p : parts) total += measure(p);
    CHECK((total == measure(whole)));
    CHECK(is_finite_partition(BoxSet::of(dim, parts), whole));
  }
}

TEST_CASE("common grid 1D") {
  const std::vector<Box> boxes{box1("0", "2"), box1("1", "3")};
  const auto cells = common_grid(boxes);
  REQUIRE(cells.size() == 3);
  CHECK((cells[0] == box1("0", "1")));
  CHECK((cells[1] == box1("1", "2")));
  CHECK((cells[2] == box1("2", "3")));

  const std::vector<Box> single{box1("1/3", "5/2")};
  const auto self = common_grid(single);
  REQUIRE(self.size() == 1);
  CHECK((self[0] == single[0]));
}

TEST_CASE("common grid 2D: cells disjoint, inputs are unions of cells") {
  const Box a = box2("0", "2", "0", "2");
  const Box b = box2("1", "3", "1", "3");
  const std::vector<Box> boxes{a, b};
  const auto cells = common_grid(boxes);
  CHECK(cells.size() <= 9);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      CHECK(boxes_disjoint(cells[i], cells[j]));
  // Pointwise: membership in each input equals membership in the union of
  // the cells inside it, on a dense rational sample.
  Rng rng(73);
  for (int s = 0; s < 400; ++s) {
    const Point p{{rng.rational(7, 2), rng.rational(7, 2)}};
    for (const Box& input : boxes) {
      bool in_cells = false;
      for (const auto& c : cells)
        if (box_subset(c, input) && c.contains(p)) in_cells = true;
      CHECK(in_cells == input.contains(p));
    }
  }
  // Exact cover by measure as well.
  for (const Box& input : boxes) {
    Rational covered(0);
    for (const auto& c : cells)
      if (box_subset(c, input)) covered += measure(c);
    CHECK((covered == measure(input)));
  }
}

TEST_CASE("boxset algebra: union, intersection, difference") {
  const BoxSet u = BoxSet::of(1, {box1("0", "2")});
  const BoxSet v = BoxSet::of(1, {box1("1", "3")});
  CHECK((measure(unite(u, v)) == rat(3)));
  CHECK((measure(intersect(u, v)) == rat(1)));
  CHECK((measure(diff(u, v)) == rat(1)));
  CHECK((diff(u, u).empty()));
  CHECK(disjoint(BoxSet::of(1, {box1("0", "1")}), BoxSet::of(1, {box1("1", "2")})));
}

TEST_CASE("boxset canonical ordering makes equal families equal") {
  const BoxSet a = BoxSet::of(1, {box1("2", "3"), box1("0", "1")});
  const BoxSet b = BoxSet::of(1, {box1("0", "1"), box1("2", "3")});
  CHECK((a == b));
}

TEST_CASE("merge glues adjacent equal-value cells into canonical runs") {
  std::vector<Cell> cells;
  cells.push_back({box2("0", "1", "0", "1"), rat(1)});
  cells.push_back({box2("1", "2", "0", "1"), rat(1)});
  cells.push_back({box2("0", "1", "1", "2"), rat(1)});
  cells.push_back({box2("1", "2", "1", "2"), rat(1)});
  const auto merged = merge_cells(std::move(cells));
  REQUIRE(merged.size() == 1);
  CHECK((merged[0].box == box2("0", "2", "0", "2")));
  CHECK((merged[0].value == rat(1)));
}
