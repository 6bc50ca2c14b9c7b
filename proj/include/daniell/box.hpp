#pragma once

#include <span>
#include <vector>

#include "daniell/rational.hpp"

namespace daniell {

struct Point {
  std::vector<Rational> coords;
  int dim() const { return static_cast<int>(coords.size()); }
};

Point point(std::vector<Rational> coords);

/// Semi-open box [a1,b1) x ... x [aN,bN). A box with a_k >= b_k for some k
/// normalizes to the canonical empty value of its dimension (all coordinates
/// zero, empty flag set), so equal sets compare equal.
class Box {
 public:
  Box(std::vector<Rational> lower, std::vector<Rational> upper);
  static Box empty(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  bool is_empty() const { return empty_; }
  const std::vector<Rational>& lower() const { return lower_; }
  const std::vector<Rational>& upper() const { return upper_; }

  // Semi-open membership: a_k <= x_k < b_k for every k.
  bool contains(const Point& x) const;

  bool operator==(const Box& other) const;
  bool operator!=(const Box& other) const { return !(*this == other); }

 private:
  std::vector<Rational> lower_, upper_;
  bool empty_ = false;
};

// Lexicographic order by lower corner, then upper corner.
bool lex_less(const Box& a, const Box& b);

Rational measure(const Box& b);
Box intersect(const Box& a, const Box& b);
bool box_subset(const Box& a, const Box& b);  // a ⊆ b as point sets
bool boxes_disjoint(const Box& a, const Box& b);

/// Finite union of pairwise disjoint nonempty boxes of one dimension,
/// kept in lexicographic order.
class BoxSet {
 public:
  explicit BoxSet(int dim);
  // Drops empty boxes, sorts; throws std::invalid_argument on overlap.
  static BoxSet of(int dim, std::vector<Box> disjoint_boxes);

  int dim() const { return dim_; }
  bool empty() const { return boxes_.empty(); }
  std::size_t size() const { return boxes_.size(); }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool contains(const Point& x) const;

  bool operator==(const BoxSet& other) const;
  bool operator!=(const BoxSet& other) const { return !(*this == other); }

 private:
  int dim_;
  std::vector<Box> boxes_;
};

Rational measure(const BoxSet& s);

/// a \ b as a canonical disjoint decomposition: per-coordinate slab peeling
/// in fixed axis order, at most 2N pieces.
BoxSet box_diff(const Box& a, const Box& b);

BoxSet diff(const BoxSet& a, const BoxSet& b);
BoxSet intersect(const BoxSet& a, const BoxSet& b);
BoxSet unite(const BoxSet& a, const BoxSet& b);
bool disjoint(const BoxSet& a, const BoxSet& b);

/// True iff parts are pairwise disjoint, each contained in whole, their
/// measures sum exactly to measure(whole), and iterated differences of the
/// whole against the parts reach the empty set (pointwise coverage).
bool is_finite_partition(const BoxSet& parts, const Box& whole);

/// The full product grid over, per coordinate, the sorted set of all
/// endpoints occurring in the inputs. Cells are pairwise disjoint and every
/// input box is exactly a union of cells; lexicographic order.
std::vector<Box> common_grid(std::span<const Box> boxes);

/// A grid-aligned disjoint cell decomposition with values. merge_cells glues
/// adjacent equal-value cells along each axis in fixed order and returns the
/// lex-sorted result; the outcome depends only on the represented function.
struct Cell {
  Box box;
  Rational value;
};
std::vector<Cell> merge_cells(std::vector<Cell> cells);

}  // namespace daniell
