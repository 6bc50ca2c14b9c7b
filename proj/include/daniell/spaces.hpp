#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "daniell/report.hpp"
#include "daniell/rng.hpp"
#include "daniell/simple_function.hpp"

namespace daniell {

/// Finitely supported function on the positive integers (the counting
/// space). Canonical: indices strictly increasing, values nonzero.
class SeqFunction {
 public:
  SeqFunction() = default;
  static SeqFunction from_terms(std::vector<std::pair<std::int64_t, Rational>> terms);

  const std::vector<std::pair<std::int64_t, Rational>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational at(std::int64_t index) const;

  bool operator==(const SeqFunction& o) const { return terms_ == o.terms_; }
  bool operator!=(const SeqFunction& o) const { return !(*this == o); }

 private:
  std::vector<std::pair<std::int64_t, Rational>> terms_;
};

Rational seq_integral(const SeqFunction& f);

/// Simple function on a finite ground set {1..m} with fixed nonnegative atom
/// weights; one value per atom. Weights are shared by all elements of a
/// space instance.
struct FiniteElem {
  std::shared_ptr<const std::vector<Rational>> weights;
  std::vector<Rational> values;

  bool operator==(const FiniteElem& o) const {
    return *weights == *o.weights && values == o.values;
  }
  bool operator!=(const FiniteElem& o) const { return !(*this == o); }
};

Rational finite_space_integral(const FiniteElem& f);

/// One elementary function from whichever space is in play.
using Elem = std::variant<SimpleFunction, SeqFunction, FiniteElem>;

/// Evaluation argument: a Point for box spaces, a 1-based index for the
/// counting space and for atoms of a finite space.
using EvalPoint = std::variant<Point, std::int64_t>;

/// Identifies one of the three elementary Daniell spaces. Selector strings:
/// "boxes:N", "counting", "finite:<w1,w2,...>".
class SpaceDesc {
 public:
  enum class Kind { Boxes, Counting, Finite };

  static SpaceDesc boxes(int dim);
  static SpaceDesc counting();
  static SpaceDesc finite(std::vector<Rational> weights);
  static SpaceDesc parse(const std::string& selector);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::shared_ptr<const std::vector<Rational>>& weights() const { return weights_; }
  std::string id() const;

  Elem zero() const;
  bool compatible(const Elem& e) const;

  bool operator==(const SpaceDesc& o) const;
  bool operator!=(const SpaceDesc& o) const { return !(*this == o); }

 private:
  Kind kind_ = Kind::Counting;
  int dim_ = 0;
  std::shared_ptr<const std::vector<Rational>> weights_;
};

// Riesz-space and integral operations, dispatching on the element variant.
// Mixed variants throw std::invalid_argument.
Elem elem_add(const Elem& a, const Elem& b);
Elem elem_scale(const Elem& a, const Rational& lambda);
Elem elem_max(const Elem& a, const Elem& b);
Elem elem_min(const Elem& a, const Elem& b);
Elem elem_abs(const Elem& a);
Rational elem_integral(const Elem& a);
Rational elem_abs_integral(const Elem& a);
bool elem_equal_ae(const Elem& a, const Elem& b);
bool elem_is_zero(const Elem& a);
Rational elem_eval(const Elem& a, const EvalPoint& x);
// Pointwise a ∧ c for constant c > 0 (Stone clipping).
Elem elem_min_const(const Elem& a, const Rational& c);

// Deterministic random elements for probes; modest term counts keep grid
// refinement cheap.
Elem random_element(Rng& rng, const SpaceDesc& space);
Elem random_nonnegative_element(Rng& rng, const SpaceDesc& space);
EvalPoint random_eval_point(Rng& rng, const SpaceDesc& space);

/// Randomized exact checks of the Daniell-space axioms: linearity and
/// positivity of the integral, the lattice identities, |∫f| <= ∫|f|; plus
/// the built-in decreasing-to-zero families for the space, reporting the
/// first index where the integral falls strictly below `threshold`, in
/// closed form where the family provides one. Deterministic given the seed.
CheckReport axioms_probe(const SpaceDesc& space, std::int64_t trials, std::uint64_t seed,
                         const Rational& threshold, std::int64_t budget);

}  // namespace daniell
