#pragma once

#include <vector>

#include "daniell/box.hpp"

namespace daniell {

enum class CombineOp { Sum, Max, Min };

/// Finite linear combination of indicators of semi-open boxes, kept in
/// canonical form: boxes pairwise disjoint and nonempty, coefficients
/// nonzero, adjacent equal-coefficient cells merged, lexicographic order.
/// The canonical form depends only on the pointwise function, so equal
/// functions compare equal. The zero function is an empty term list with a
/// dimension tag.
class SimpleFunction {
 public:
  struct Term {
    Box box;
    Rational coef;
    bool operator==(const Term& o) const { return box == o.box && coef == o.coef; }
  };

  explicit SimpleFunction(int dim);  // zero function
  // Accepts overlapping boxes, zero coefficients, empty boxes; canonicalizes.
  static SimpleFunction from_terms(int dim, std::vector<Term> raw_terms);
  static SimpleFunction indicator(const Box& b, const Rational& coef = Rational(1));
  static SimpleFunction indicator(const BoxSet& s, const Rational& coef = Rational(1));

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  bool operator==(const SimpleFunction& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const SimpleFunction& o) const { return !(*this == o); }

 private:
  int dim_;
  std::vector<Term> terms_;
};

// Value at x; semi-open membership, 0 outside all terms.
Rational evaluate(const SimpleFunction& f, const Point& x);

// Pointwise sum / max / min on the common grid of both term sets.
SimpleFunction combine(const SimpleFunction& f, const SimpleFunction& g, CombineOp op);
SimpleFunction add(const SimpleFunction& f, const SimpleFunction& g);
SimpleFunction scale(const SimpleFunction& f, const Rational& lambda);
SimpleFunction absolute(const SimpleFunction& f);

// Integral: sum of coef * measure(box) over the canonical terms.
Rational integral_simple(const SimpleFunction& f);

// max |coef| over terms; 0 for the zero function.
Rational sup_abs(const SimpleFunction& f);

// The canonical BoxSet of the term boxes.
BoxSet support(const SimpleFunction& f);

// Pointwise f ∧ c for constant c > 0 (coefficients clipped at c).
SimpleFunction min_with_constant(const SimpleFunction& f, const Rational& c);

// True iff the integral of |f - g| is exactly zero.
bool equal_ae_simple(const SimpleFunction& f, const SimpleFunction& g);

// True iff every canonical coefficient is >= 0 (pointwise nonnegativity).
bool nonnegative(const SimpleFunction& f);

}  // namespace daniell
