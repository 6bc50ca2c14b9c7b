#include "daniell/simple_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace daniell {

SimpleFunction::SimpleFunction(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("simple function: dimension must be >= 1");
}

SimpleFunction SimpleFunction::from_terms(int dim, std::vector<Term> raw_terms) {
  SimpleFunction f(dim);
  std::vector<Box> boxes;
  for (const auto& t : raw_terms) {
    if (t.box.dim() != dim)
      throw std::invalid_argument("simple function: term dimension mismatch");
    if (!t.box.is_empty() && t.coef != 0) boxes.push_back(t.box);
  }
  if (boxes.empty()) return f;

  // Refine to the common grid of all endpoints, sum overlapping coefficients
  // per cell, then merge equal-value runs axis by axis. The result depends
  // only on the pointwise function, not on the incoming representation.
  std::vector<Cell> cells;
  for (auto& cell_box : common_grid(boxes)) {
    Rational v(0);
    const Point probe{cell_box.lower()};
    for (const auto& t : raw_terms)
      if (!t.box.is_empty() && t.box.contains(probe)) v += t.coef;
    if (v != 0) cells.push_back({std::move(cell_box), std::move(v)});
  }
  cells = merge_cells(std::move(cells));
  f.terms_.reserve(cells.size());
  for (auto& c : cells) f.terms_.push_back({std::move(c.box), std::move(c.value)});
  return f;
}

SimpleFunction SimpleFunction::indicator(const Box& b, const Rational& coef) {
  return from_terms(b.dim(), {{b, coef}});
}

SimpleFunction SimpleFunction::indicator(const BoxSet& s, const Rational& coef) {
  std::vector<Term> terms;
  for (const auto& b : s.boxes()) terms.push_back({b, coef});
  return from_terms(s.dim(), std::move(terms));
}

Rational evaluate(const SimpleFunction& f, const Point& x) {
  if (x.dim() != f.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  for (const auto& t : f.terms())
    if (t.box.contains(x)) return t.coef;
  return Rational(0);
}

SimpleFunction combine(const SimpleFunction& f, const SimpleFunction& g, CombineOp op) {
  if (f.dim() != g.dim()) throw std::invalid_argument("combine: dimension mismatch");
  std::vector<Box> boxes;
  for (const auto& t : f.terms()) boxes.push_back(t.box);
  for (const auto& t : g.terms()) boxes.push_back(t.box);
  if (boxes.empty()) return SimpleFunction(f.dim());

  std::vector<SimpleFunction::Term> terms;
  for (auto& cell_box : common_grid(boxes)) {
    const Point probe{cell_box.lower()};
    const Rational a = evaluate(f, probe);
    const Rational b = evaluate(g, probe);
    Rational v;
    switch (op) {
      case CombineOp::Sum: v = a + b; break;
      case CombineOp::Max: v = std::max(a, b); break;
      case CombineOp::Min: v = std::min(a, b); break;
    }
    if (v != 0) terms.push_back({std::move(cell_box), std::move(v)});
  }
  return SimpleFunction::from_terms(f.dim(), std::move(terms));
}

SimpleFunction add(const SimpleFunction& f, const SimpleFunction& g) {
  return combine(f, g, CombineOp::Sum);
}

SimpleFunction scale(const SimpleFunction& f, const Rational& lambda) {
  if (lambda == 0) return SimpleFunction(f.dim());
  std::vector<SimpleFunction::Term> terms = f.terms();
  for (auto& t : terms) t.coef *= lambda;
  return SimpleFunction::from_terms(f.dim(), std::move(terms));
}

SimpleFunction absolute(const SimpleFunction& f) {
  std::vector<SimpleFunction::Term> terms = f.terms();
  for (auto& t : terms) t.coef = rat_abs(t.coef);
  return SimpleFunction::from_terms(f.dim(), std::move(terms));
}

Rational integral_simple(const SimpleFunction& f) {
  Rational total(0);
  for (const auto& t : f.terms()) total += t.coef * measure(t.box);
  return total;
}

Rational sup_abs(const SimpleFunction& f) {
  Rational m(0);
  for (const auto& t : f.terms()) m = std::max(m, rat_abs(t.coef));
  return m;
}

BoxSet support(const SimpleFunction& f) {
  std::vector<Box> boxes;
  for (const auto& t : f.terms()) boxes.push_back(t.box);
  return BoxSet::of(f.dim(), std::move(boxes));
}

SimpleFunction min_with_constant(const SimpleFunction& f, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("min_with_constant: constant must be positive");
  std::vector<SimpleFunction::Term> terms = f.terms();
  for (auto& t : terms) t.coef = std::min(t.coef, c);
  return SimpleFunction::from_terms(f.dim(), std::move(terms));
}

bool equal_ae_simple(const SimpleFunction& f, const SimpleFunction& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("equal_ae_simple: dimension mismatch");
  return integral_simple(absolute(combine(f, scale(g, Rational(-1)), CombineOp::Sum))) == 0;
}

bool nonnegative(const SimpleFunction& f) {
  for (const auto& t : f.terms())
    if (t.coef < 0) return false;
  return true;
}

}  // namespace daniell
