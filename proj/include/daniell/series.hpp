#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "daniell/spaces.hpp"

namespace daniell {

/// Closed rational interval certified to contain a limit value (an integral
/// or a norm); the computable surrogate for limits of series of integrals.
struct Enclosure {
  Rational lo, hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }
  bool operator==(const Enclosure& o) const { return lo == o.lo && hi == o.hi; }
};

/// Pointwise evaluation outcome: exact value, certified enclosure, or
/// UNKNOWN when the tail model offers no pointwise bound.
struct EvalResult {
  enum class Kind { Exact, Enclosed, Unknown };
  Kind kind = Kind::Unknown;
  Rational value;
  Enclosure enclosure{Rational(0), Rational(0)};

  static EvalResult exact(Rational v);
  static EvalResult enclosed(Enclosure e);
  static EvalResult unknown();
};

/// Answer to "what do the terms beyond index k contribute at point x":
/// either an upper bound on the absolute tail sum, or a certificate that
/// the pointwise series diverges absolutely (represented value 0).
struct PointwiseTail {
  enum class Kind { Bound, Divergent };
  Kind kind = Kind::Bound;
  Rational bound;

  static PointwiseTail of(Rational b) { return {Kind::Bound, std::move(b)}; }
  static PointwiseTail divergent() { return {Kind::Divergent, Rational(0)}; }
};

/// Thrown when an enclosure cannot be tightened to the requested tolerance
/// within the iteration budget; carries the best bound achieved.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, Rational achieved_bound)
      : std::runtime_error(what + " (best bound achieved: " + rat_str(achieved_bound) + ")"),
        achieved(std::move(achieved_bound)) {}
  Rational achieved;
};

/// A function represented by a series of elementary terms with summable
/// absolute integrals: an explicit materialized prefix plus a tail model
/// (pure index -> term generator and a certified bound function
/// B_k >= sum_{n>k} of the absolute term integrals, B_k -> 0, nonincreasing
/// and consistent under refinement). The observable API is enclosures; a
/// value is copied cheaply and refinement produces a new value.
class SeriesFunction {
 public:
  using TermFn = std::function<Elem(std::int64_t)>;       // absolute 1-based index
  using BoundFn = std::function<Rational(std::int64_t)>;  // B_k, k >= 0
  using PointwiseFn =
      std::function<std::optional<PointwiseTail>(std::int64_t, const EvalPoint&)>;

  // All further terms zero; B_k is the exact remaining absolute-term sum.
  static SeriesFunction finite(SpaceDesc space, std::vector<Elem> terms);
  static SeriesFunction with_tail(SpaceDesc space, std::vector<Elem> prefix, TermFn gen,
                                  BoundFn bound, PointwiseFn pointwise = nullptr,
                                  bool disjoint_term_supports = false);

  const SpaceDesc& space() const { return space_; }
  std::int64_t prefix_len() const { return static_cast<std::int64_t>(terms_->size()); }
  bool zero_tail() const { return !gen_; }
  bool has_pointwise() const;
  bool disjoint_term_supports() const { return disjoint_supports_; }

  // n-th term (1-based); generated beyond the prefix, zero beyond a zero tail.
  Elem term(std::int64_t n) const;
  // Certified bound on the absolute-integral tail beyond index k.
  Rational bound(std::int64_t k) const;
  Rational total_bound() const { return bound(0); }
  std::optional<PointwiseTail> pointwise_tail(std::int64_t k, const EvalPoint& x) const;

 private:
  SpaceDesc space_ = SpaceDesc::counting();
  std::shared_ptr<const std::vector<Elem>> terms_;
  TermFn gen_;
  BoundFn bound_;
  PointwiseFn pointwise_;
  bool disjoint_supports_ = false;
};

SeriesFunction from_elementary(SpaceDesc space, Elem e);

// Extends the materialized prefix to length >= k; the represented function
// and the bound function are unchanged. No-op on zero tails and on k below
// the current prefix length.
SeriesFunction refine_prefix(const SeriesFunction& f, std::int64_t k);

// Interleaved sum f1,g1,f2,g2,... (termwise when both tails are ZERO, where
// regrouping is equivalent), scaling, and the absolute-value series
// |f| ~ g1 + f1 - f1 + g2 + f2 - f2 + ... with g_n = |s_n| - |s_{n-1}|.
SeriesFunction series_add(const SeriesFunction& f, const SeriesFunction& g);
SeriesFunction series_scale(const SeriesFunction& f, const Rational& lambda);
SeriesFunction series_abs(const SeriesFunction& f);
SeriesFunction series_max(const SeriesFunction& f, const SeriesFunction& g);
SeriesFunction series_min(const SeriesFunction& f, const SeriesFunction& g);

// Collapses an initial block into a single term so that the certified total
// absolute-term bound is at most the norm upper bound at tolerance eps/4
// (and hence at most norm + eps).
SeriesFunction renormalize_eps(const SeriesFunction& f, const Rational& eps,
                               std::int64_t budget);

// Same function, terms regrouped into consecutive blocks of the given sizes
// (each block collapsed to one elementary term). Blocks must be >= 1.
SeriesFunction regroup_series(const SeriesFunction& f, const std::vector<std::int64_t>& blocks);

// Prepend explicit elementary terms in front of a series (shifting it).
SeriesFunction prepend_terms(std::vector<Elem> front, const SeriesFunction& f);

/// Elementary terms 'beyond the explicit list' of a double series, with a
/// certified bound on the remaining absolute integrals.
struct ElementaryTail {
  SeriesFunction::TermFn term;    // outer index i >= 1
  SeriesFunction::BoundFn bound;  // >= sum_{i>j} of |integral| of term(i)
  SeriesFunction::PointwiseFn pointwise;  // optional
};

// Sum of countably many series: each explicit series is renormalized to
// slack 2^-i, then all term streams are merged along diagonals (i+n
// constant); the resulting bounds sum the renormalized bounds.
SeriesFunction flatten_double_series(SpaceDesc space, std::vector<SeriesFunction> fs,
                                     std::optional<ElementaryTail> outer, std::int64_t budget);

struct EnclosureDetail {
  Enclosure enc;
  std::int64_t terms_used = 0;
};

// [s_k - B_k, s_k + B_k] with s_k the sum of the first k term integrals.
Enclosure integral_enclosure_at(const SeriesFunction& f, std::int64_t k);
// Refined until B_k <= eps; width <= 2 eps. Throws BudgetExceeded.
EnclosureDetail integral_enclosure_detail(const SeriesFunction& f, const Rational& eps,
                                          std::int64_t budget);
Enclosure integral_enclosure(const SeriesFunction& f, const Rational& eps, std::int64_t budget);

// [max(0, |s_k|-integral - B_k), |s_k|-integral + B_k] for the elementary
// partial sum s_k; same refinement contract as integral_enclosure.
Enclosure norm_enclosure_at(const SeriesFunction& f, std::int64_t k);
EnclosureDetail norm_enclosure_detail(const SeriesFunction& f, const Rational& eps,
                                      std::int64_t budget);
Enclosure norm_enclosure(const SeriesFunction& f, const Rational& eps, std::int64_t budget);

// Pointwise value: exact for ZERO tails; an enclosure of half-width <= eps
// when the tail has a pointwise bound (exact value 0 where the tail proves
// absolute divergence); UNKNOWN otherwise or when the budget runs out.
EvalResult eval_enclosure(const SeriesFunction& f, const EvalPoint& x, const Rational& eps,
                          std::int64_t budget);

/// Certified null / equal-a.e. decisions: certified == true means the norm
/// enclosure upper bound was driven to <= eps; `definitely_not` means the
/// lower bound exceeded eps (the norm is provably > eps).
struct NullCertificate {
  bool certified = false;
  bool definitely_not = false;
  Enclosure norm{Rational(0), Rational(0)};
  std::int64_t terms_used = 0;
};
NullCertificate is_null_certified(const SeriesFunction& f, const Rational& eps,
                                  std::int64_t budget);
NullCertificate equal_ae_certified(const SeriesFunction& f, const SeriesFunction& g,
                                   const Rational& eps, std::int64_t budget);

// Elementary partial sum s_k = f_1 + ... + f_k.
Elem partial_sum_elem(const SeriesFunction& f, std::int64_t k);

}  // namespace daniell
