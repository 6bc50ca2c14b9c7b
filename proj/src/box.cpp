#include "daniell/box.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace daniell {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Point point(std::vector<Rational> coords) { return Point{std::move(coords)}; }

Box::Box(std::vector<Rational> lower, std::vector<Rational> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.empty())
    throw std::invalid_argument("box: corner size mismatch or dimension 0");
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (lower_[k] >= upper_[k]) {
      empty_ = true;
      break;
    }
  }
  if (empty_) {
    std::fill(lower_.begin(), lower_.end(), Rational(0));
    std::fill(upper_.begin(), upper_.end(), Rational(0));
  }
}

Box Box::empty(int dim) {
  if (dim < 1) throw std::invalid_argument("box: dimension must be >= 1");
  std::vector<Rational> z(static_cast<std::size_t>(dim), Rational(0));
  Box b(z, z);
  b.empty_ = true;
  return b;
}

bool Box::contains(const Point& x) const {
  require_same_dim(dim(), x.dim(), "contains");
  if (empty_) return false;
  for (std::size_t k = 0; k < lower_.size(); ++k)
    if (x.coords[k] < lower_[k] || x.coords[k] >= upper_[k]) return false;
  return true;
}

bool Box::operator==(const Box& other) const {
  if (dim() != other.dim() || empty_ != other.empty_) return false;
  if (empty_) return true;
  return lower_ == other.lower_ && upper_ == other.upper_;
}

bool lex_less(const Box& a, const Box& b) {
  // Empty sorts first within a dimension.
  if (a.is_empty() != b.is_empty()) return a.is_empty();
  for (int k = 0; k < a.dim(); ++k) {
    if (a.lower()[k] != b.lower()[k]) return a.lower()[k] < b.lower()[k];
  }
  for (int k = 0; k < a.dim(); ++k) {
    if (a.upper()[k] != b.upper()[k]) return a.upper()[k] < b.upper()[k];
  }
  return false;
}

Rational measure(const Box& b) {
  if (b.is_empty()) return Rational(0);
  Rational m(1);
  for (int k = 0; k < b.dim(); ++k) m *= b.upper()[k] - b.lower()[k];
  return m;
}

Box intersect(const Box& a, const Box& b) {
  require_same_dim(a.dim(), b.dim(), "intersect");
  if (a.is_empty() || b.is_empty()) return Box::empty(a.dim());
  std::vector<Rational> lo(a.lower()), hi(a.upper());
  for (int k = 0; k < a.dim(); ++k) {
    lo[k] = std::max(lo[k], b.lower()[k]);
    hi[k] = std::min(hi[k], b.upper()[k]);
  }
  return Box(std::move(lo), std::move(hi));
}

bool box_subset(const Box& a, const Box& b) {
  require_same_dim(a.dim(), b.dim(), "box_subset");
  if (a.is_empty()) return true;
  return intersect(a, b) == a;
}

bool boxes_disjoint(const Box& a, const Box& b) { return intersect(a, b).is_empty(); }

BoxSet::BoxSet(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("boxset: dimension must be >= 1");
}

BoxSet BoxSet::of(int dim, std::vector<Box> boxes) {
  BoxSet s(dim);
  for (auto& b : boxes) {
    require_same_dim(dim, b.dim(), "boxset");
    if (!b.is_empty()) s.boxes_.push_back(std::move(b));
  }
  std::sort(s.boxes_.begin(), s.boxes_.end(), lex_less);
  for (std::size_t i = 0; i < s.boxes_.size(); ++i)
    for (std::size_t j = i + 1; j < s.boxes_.size(); ++j)
      if (!boxes_disjoint(s.boxes_[i], s.boxes_[j]))
        throw std::invalid_argument("boxset: boxes overlap");
  return s;
}

bool BoxSet::contains(const Point& x) const {
  for (const auto& b : boxes_)
    if (b.contains(x)) return true;
  return false;
}

bool BoxSet::operator==(const BoxSet& other) const {
  return dim_ == other.dim_ && boxes_ == other.boxes_;
}

Rational measure(const BoxSet& s) {
  Rational m(0);
  for (const auto& b : s.boxes()) m += measure(b);
  return m;
}

BoxSet box_diff(const Box& a, const Box& b) {
  require_same_dim(a.dim(), b.dim(), "box_diff");
  const int n = a.dim();
  if (a.is_empty()) return BoxSet(n);
  const Box core = intersect(a, b);
  if (core.is_empty()) return BoxSet::of(n, {a});

  std::vector<Box> pieces;
  std::vector<Rational> lo(a.lower()), hi(a.upper());
  for (int k = 0; k < n; ++k) {
    if (lo[k] < core.lower()[k]) {
      auto phi = hi;
      phi[k] = core.lower()[k];
      pieces.emplace_back(lo, phi);
      lo[k] = core.lower()[k];
    }
    if (core.upper()[k] < hi[k]) {
      auto plo = lo;
      plo[k] = core.upper()[k];
      pieces.emplace_back(plo, hi);
      hi[k] = core.upper()[k];
    }
  }
  return BoxSet::of(n, std::move(pieces));
}

BoxSet diff(const BoxSet& a, const BoxSet& b) {
  require_same_dim(a.dim(), b.dim(), "diff");
  std::vector<Box> acc = a.boxes();
  for (const auto& cut : b.boxes()) {
    std::vector<Box> next;
    for (const auto& piece : acc) {
      const BoxSet peeled = box_diff(piece, cut);
      for (const auto& r : peeled.boxes()) next.push_back(r);
    }
    acc = std::move(next);
  }
  return BoxSet::of(a.dim(), std::move(acc));
}

BoxSet intersect(const BoxSet& a, const BoxSet& b) {
  require_same_dim(a.dim(), b.dim(), "intersect");
  std::vector<Box> acc;
  for (const auto& x : a.boxes())
    for (const auto& y : b.boxes()) {
      Box c = intersect(x, y);
      if (!c.is_empty()) acc.push_back(std::move(c));
    }
  return BoxSet::of(a.dim(), std::move(acc));
}

BoxSet unite(const BoxSet& a, const BoxSet& b) {
  require_same_dim(a.dim(), b.dim(), "unite");
  std::vector<Box> acc = diff(a, b).boxes();
  for (const auto& y : b.boxes()) acc.push_back(y);
  return BoxSet::of(a.dim(), std::move(acc));
}

bool disjoint(const BoxSet& a, const BoxSet& b) { return intersect(a, b).empty(); }

bool is_finite_partition(const BoxSet& parts, const Box& whole) {
  require_same_dim(parts.dim(), whole.dim(), "is_finite_partition");
  Rational total(0);
  for (const auto& p : parts.boxes()) {
    if (!box_subset(p, whole)) return false;
    total += measure(p);
  }
  if (total != measure(whole)) return false;
  // Coverage: peel every part off the whole and require nothing remains.
  std::vector<Box> remainder{whole};
  if (whole.is_empty()) remainder.clear();
  for (const auto& p : parts.boxes()) {
    std::vector<Box> next;
    for (const auto& piece : remainder) {
      const BoxSet peeled = box_diff(piece, p);
      for (const auto& r : peeled.boxes()) next.push_back(r);
    }
    remainder = std::move(next);
  }
  return remainder.empty();
}

std::vector<Box> common_grid(std::span<const Box> boxes) {
  int n = -1;
  for (const auto& b : boxes) {
    if (n < 0) n = b.dim();
    require_same_dim(n, b.dim(), "common_grid");
  }
  if (n < 0) return {};

  std::vector<std::vector<Rational>> cuts(static_cast<std::size_t>(n));
  for (const auto& b : boxes) {
    if (b.is_empty()) continue;
    for (int k = 0; k < n; ++k) {
      cuts[k].push_back(b.lower()[k]);
      cuts[k].push_back(b.upper()[k]);
    }
  }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.size() < 2) return {};
  }

  std::vector<Box> cells;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<Rational> lo, hi;
    lo.reserve(n);
    hi.reserve(n);
    for (int k = 0; k < n; ++k) {
      lo.push_back(cuts[k][idx[k]]);
      hi.push_back(cuts[k][idx[k] + 1]);
    }
    cells.emplace_back(std::move(lo), std::move(hi));
    int k = n - 1;
    while (k >= 0) {
      if (++idx[k] + 1 < cuts[k].size()) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  std::sort(cells.begin(), cells.end(), lex_less);
  return cells;
}

namespace {

// Interval keys for grouping cells that agree on every axis but one.
bool cells_lex_less(const Cell& a, const Cell& b) { return lex_less(a.box, b.box); }

}  // namespace

std::vector<Cell> merge_cells(std::vector<Cell> cells) {
  if (cells.empty()) return cells;
  const int n = cells.front().box.dim();
  for (int axis = 0; axis < n; ++axis) {
    // Sort so that cells differing only along `axis` become adjacent runs.
    std::sort(cells.begin(), cells.end(), [axis, n](const Cell& a, const Cell& b) {
      for (int k = 0; k < n; ++k) {
        if (k == axis) continue;
        if (a.box.lower()[k] != b.box.lower()[k]) return a.box.lower()[k] < b.box.lower()[k];
        if (a.box.upper()[k] != b.box.upper()[k]) return a.box.upper()[k] < b.box.upper()[k];
      }
      return a.box.lower()[axis] < b.box.lower()[axis];
    });
    std::vector<Cell> merged;
    for (auto& c : cells) {
      bool glued = false;
      if (!merged.empty()) {
        Cell& last = merged.back();
        bool same_sides = last.value == c.value;
        for (int k = 0; same_sides && k < n; ++k) {
          if (k == axis) continue;
          same_sides = last.box.lower()[k] == c.box.lower()[k] &&
                       last.box.upper()[k] == c.box.upper()[k];
        }
        if (same_sides && last.box.upper()[axis] == c.box.lower()[axis]) {
          auto lo = last.box.lower();
          auto hi = last.box.upper();
          hi[axis] = c.box.upper()[axis];
          last.box = Box(std::move(lo), std::move(hi));
          glued = true;
        }
      }
      if (!glued) merged.push_back(std::move(c));
    }
    cells = std::move(merged);
  }
  std::sort(cells.begin(), cells.end(), cells_lex_less);
  return cells;
}

}  // namespace daniell
