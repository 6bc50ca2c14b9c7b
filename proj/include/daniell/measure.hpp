#pragma once

#include <optional>

#include "daniell/series.hpp"

namespace daniell {

/// Measure of a set: a certified finite enclosure, or infinite.
struct MeasureValue {
  bool infinite = false;
  Enclosure value{Rational(0), Rational(0)};

  static MeasureValue exact(Rational m) {
    return MeasureValue{false, Enclosure{m, m}};
  }
  static MeasureValue of(Enclosure e) { return MeasureValue{false, std::move(e)}; }
  static MeasureValue inf() { return MeasureValue{true, Enclosure{Rational(0), Rational(0)}}; }
};

enum class SetOp { Difference, Union, Intersection };

/// A set whose indicator is integrable: kept as an exact BoxSet when
/// possible (box spaces), otherwise as an indicator series.
class IntegrableSet {
 public:
  static IntegrableSet from_boxes(BoxSet boxes);
  static IntegrableSet from_series(SeriesFunction indicator);

  const SpaceDesc& space() const { return indicator_.space(); }
  bool exact() const { return bool(exact_); }
  const BoxSet& boxes() const;
  const SeriesFunction& indicator() const { return indicator_; }

 private:
  std::optional<BoxSet> exact_;
  SeriesFunction indicator_ = SeriesFunction::finite(SpaceDesc::counting(), {});
};

// Measure of the set: exact for BoxSet forms, otherwise the integral
// enclosure of the indicator at tolerance eps.
MeasureValue mu_of(const IntegrableSet& a, const Rational& eps, std::int64_t budget);

// Difference / union / intersection. Exact box algebra when both sides are
// exact; otherwise built from the lattice identities on indicator series
// (χ_{U∩V} = χ_U ∧ χ_V, χ_{U\V} = χ_U − χ_{U∩V},
//  χ_{U∪V} = χ_U + χ_V − χ_{U∩V}).
IntegrableSet set_combine(const IntegrableSet& u, const IntegrableSet& v, SetOp op);

struct SigmaUnion {
  std::optional<IntegrableSet> set;  // absent when declared divergent
  MeasureValue measure;
};

// Countable disjoint union. Exact members are checked pairwise disjoint
// (std::invalid_argument on overlap); series members are taken as declared.
// A declared-divergent family yields MeasureValue infinite.
SigmaUnion sigma_union(const SpaceDesc& space, const std::vector<IntegrableSet>& members,
                       std::optional<ElementaryTail> tail, bool declared_divergent,
                       const Rational& eps, std::int64_t budget);

// Level-set staircase under a nonnegative simple f: with M = sup |f| and
// 2^level buckets of height M/2^level, each value is rounded down to the
// bottom of its bucket. The result is <= f pointwise and within M/2^level
// of f on its support. Throws on negative coefficients.
SimpleFunction dyadic_decomposition(const SimpleFunction& f, int level);

// Pointwise f ∧ cap for cap > 0. Exact for ZERO tails; per-term clipping
// when the tail declares pairwise disjoint term supports; otherwise via
// series_min against cap on the declared support box. Throws when the
// support is unbounded and no support box is given.
SeriesFunction truncate_at(const SeriesFunction& f, const Rational& cap,
                           std::optional<Box> declared_support = std::nullopt);

// Random elements f: verifies f ∧ 1 stays in the space and matches
// pointwise clipping at sampled points, exactly.
CheckReport stone_check(const SpaceDesc& space, std::int64_t trials, std::uint64_t seed);

}  // namespace daniell
