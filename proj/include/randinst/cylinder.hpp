#pragma once

// Cylinder sets over product spaces A_1 x A_2 x ... and their Lebesgue outer
// measure.
//
// Two spaces are provided: {0,1}^∞ (every coordinate has arity 2) and Encf^∞
// (coordinate k holds an encoding function of width k, arity (2^k)!). A cell
// fixes some leading coordinates and may leave individual coordinates free
// ("wildcards"); a cell with wildcards denotes the union of all its explicit
// expansions. Explicit cells are ordinary finite strings / finite families.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "randinst/encoding.hpp"
#include "randinst/rational.hpp"

namespace randinst {

struct BinarySpace {
  using Symbol = std::uint8_t;
  using Prefix = BinaryString;
  static constexpr const char* kName = "binary";

  static const BigInt& arity(std::size_t) {
    static const BigInt two = 2;
    return two;
  }
  static void validate(std::size_t, const Symbol& s) {
    if (s > 1) throw std::invalid_argument("bit value out of range");
  }
  static Symbol first_symbol(std::size_t) { return 0; }
  static bool next_symbol(Symbol& s) {
    if (s == 0) {
      s = 1;
      return true;
    }
    return false;
  }
  static BigInt rank(const Symbol& s) { return BigInt(s); }
  static Symbol at(const Prefix& p, std::size_t i) { return p[i]; }
  static void push(Prefix& p, const Symbol& s) { p.push_back(s); }
  static std::string format(const Symbol& s) { return s ? "1" : "0"; }
};

struct FamilySpace {
  using Symbol = EncodingFunction;
  using Prefix = FamilyPrefix;
  static constexpr const char* kName = "family";

  static const BigInt& arity(std::size_t coord) {
    return encoding_count(static_cast<unsigned>(coord + 1));
  }
  static void validate(std::size_t coord, const Symbol& s) {
    if (s.width() != coord + 1) {
      throw std::invalid_argument("coordinate " + std::to_string(coord + 1) +
                                  " must hold an encoding of width " + std::to_string(coord + 1));
    }
  }
  static Symbol first_symbol(std::size_t coord) {
    return EncodingFunction::identity(static_cast<unsigned>(coord + 1));
  }
  static bool next_symbol(Symbol& s) { return s.next(); }
  static BigInt rank(const Symbol& s) { return s.rank(); }
  static const Symbol& at(const Prefix& p, std::size_t i) { return p[i]; }
  static void push(Prefix& p, const Symbol& s) { p.push_back(s); }
  static std::string format(const Symbol& s) { return s.to_string(); }
};

/// |I(s)| for a prefix of `length` fixed coordinates.
template <class Space>
Rational prefix_volume(std::size_t length) {
  BigInt den = 1;
  for (std::size_t k = 0; k < length; ++k) den *= Space::arity(k);
  return make_rational(1, den);
}

/// Π_{k=1}^{|s|} 1/(2^k)!; 1 for the empty family.
inline Rational family_cell_volume(const FamilyPrefix& s) { return prefix_volume<FamilySpace>(s.size()); }
inline Rational binary_cell_volume(const BinaryString& x) { return prefix_volume<BinarySpace>(x.size()); }

template <class Space>
class Cell {
 public:
  using Symbol = typename Space::Symbol;
  using Prefix = typename Space::Prefix;

  Cell() = default;

  explicit Cell(const Prefix& p) {
    coords_.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) coords_.emplace_back(Space::at(p, i));
  }

  /// Trailing wildcards are dropped: a cell free in its last coordinate is
  /// the same open set as the shorter cell.
  explicit Cell(std::vector<std::optional<Symbol>> coords) : coords_(std::move(coords)) {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i]) Space::validate(i, *coords_[i]);
    }
    while (!coords_.empty() && !coords_.back()) coords_.pop_back();
  }

  std::size_t size() const { return coords_.size(); }
  const std::optional<Symbol>& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<std::optional<Symbol>>& coords() const { return coords_; }

  bool is_explicit() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return c.has_value(); });
  }

  Prefix to_prefix() const {
    Prefix p;
    for (const auto& c : coords_) {
      if (!c) throw std::logic_error("cell has free coordinates");
      Space::push(p, *c);
    }
    return p;
  }

  /// Product of 1/arity over the fixed coordinates.
  Rational volume() const {
    BigInt den = 1;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      if (coords_[k]) den *= Space::arity(k);
    }
    return make_rational(1, den);
  }

  /// True when the fixed coordinates among the first min(|cell|, |t|) agree
  /// with t, i.e. the cell meets I(t).
  bool compatible(const Prefix& t) const {
    std::size_t n = std::min(coords_.size(), t.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (coords_[i] && !(*coords_[i] == Space::at(t, i))) return false;
    }
    return true;
  }

  /// I(t) ⊆ ⟦cell⟧.
  bool covers(const Prefix& t) const { return coords_.size() <= t.size() && compatible(t); }

  friend bool operator==(const Cell& a, const Cell& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Cell& a, const Cell& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<std::optional<Symbol>> coords_;
};

template <class Space>
class CylinderSet {
 public:
  using CellType = Cell<Space>;
  using space_type = Space;
  using Prefix = typename Space::Prefix;

  CylinderSet() = default;
  explicit CylinderSet(std::vector<CellType> cells) : cells_(std::move(cells)) {}

  static CylinderSet from_prefixes(const std::vector<Prefix>& prefixes) {
    CylinderSet s;
    for (const auto& p : prefixes) s.insert(p);
    return s;
  }

  void insert(const CellType& c) { cells_.push_back(c); }
  void insert(const Prefix& p) { cells_.emplace_back(p); }
  void append(const CylinderSet& other) {
    cells_.insert(cells_.end(), other.cells_.begin(), other.cells_.end());
  }

  const std::vector<CellType>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  bool is_explicit() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const CellType& c) { return c.is_explicit(); });
  }
  std::size_t max_length() const {
    std::size_t m = 0;
    for (const auto& c : cells_) m = std::max(m, c.size());
    return m;
  }

 private:
  std::vector<CellType> cells_;
};

using BinaryCylinderSet = CylinderSet<BinarySpace>;
using FamilyCylinderSet = CylinderSet<FamilySpace>;

/// ⟦p⟧ ⊆ ⟦q⟧ witnessed by the single cell q.
template <class Space>
bool subsumes(const Cell<Space>& q, const Cell<Space>& p) {
  if (q.size() > p.size()) return false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!q[i]) continue;
    if (!p[i] || !(*q[i] == *p[i])) return false;
  }
  return true;
}

/// Deduplicates and deletes every cell contained in another member. On
/// explicit sets this is exactly "delete any string with a proper prefix in
/// the set", and the result is prefix-free.
template <class Space>
CylinderSet<Space> normalize_prefix_free(const CylinderSet<Space>& s) {
  std::vector<Cell<Space>> cells = s.cells();
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  std::vector<Cell<Space>> kept;
  if (std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.is_explicit(); })) {
    std::set<Cell<Space>> members(cells.begin(), cells.end());
    for (const auto& c : cells) {
      bool has_proper_prefix = false;
      std::vector<std::optional<typename Space::Symbol>> head;
      for (std::size_t len = 0; len < c.size() && !has_proper_prefix; ++len) {
        if (members.count(Cell<Space>(head))) has_proper_prefix = true;
        head.push_back(c[len]);
      }
      if (!has_proper_prefix) kept.push_back(c);
    }
    return CylinderSet<Space>(std::move(kept));
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < cells.size() && !redundant; ++j) {
      if (i != j && subsumes(cells[j], cells[i])) redundant = true;
    }
    if (!redundant) kept.push_back(cells[i]);
  }
  return CylinderSet<Space>(std::move(kept));
}

/// True when no member is a prefix of another (explicit sets only).
template <class Space>
bool is_prefix_free(const CylinderSet<Space>& s) {
  const auto& cells = s.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (i != j && subsumes(cells[i], cells[j])) return false;
    }
  }
  return true;
}

namespace detail {

template <class Space>
Rational split_measure(const std::vector<const Cell<Space>*>& live, std::size_t coord) {
  if (live.empty()) return Rational(0);
  for (const auto* c : live) {
    if (c->size() <= coord) return Rational(1);
  }
  std::vector<const Cell<Space>*> wild;
  std::map<typename Space::Symbol, std::vector<const Cell<Space>*>> groups;
  for (const auto* c : live) {
    const auto& sym = (*c)[coord];
    if (sym) {
      groups[*sym].push_back(c);
    } else {
      wild.push_back(c);
    }
  }
  const BigInt& arity = Space::arity(coord);
  Rational sum = 0;
  for (auto& [sym, group] : groups) {
    bool exhausted = std::any_of(group.begin(), group.end(),
                                 [&](const Cell<Space>* c) { return c->size() <= coord + 1; });
    if (exhausted) {
      sum += 1;
      continue;
    }
    group.insert(group.end(), wild.begin(), wild.end());
    sum += split_measure<Space>(group, coord + 1);
  }
  BigInt others = arity - static_cast<unsigned long>(groups.size());
  if (others > 0 && !wild.empty()) sum += Rational(others) * split_measure<Space>(wild, coord + 1);
  sum /= Rational(arity);
  return sum;
}

template <class Space>
std::vector<const Cell<Space>*> compatible_cells(const CylinderSet<Space>& s,
                                                 const typename Space::Prefix& t) {
  std::vector<const Cell<Space>*> live;
  for (const auto& c : s.cells()) {
    if (c.compatible(t)) live.push_back(&c);
  }
  return live;
}

}  // namespace detail

/// Exact Λ(⟦S⟧) for any finite set of cells, overlapping or not. Splits on
/// one coordinate at a time; symbols no cell mentions share one subproblem.
template <class Space>
Rational measure(const CylinderSet<Space>& s) {
  std::vector<const Cell<Space>*> live;
  live.reserve(s.size());
  for (const auto& c : s.cells()) live.push_back(&c);
  return detail::split_measure<Space>(live, 0);
}

/// Σ_{s∈P} |I(s)| for an explicit prefix-free P.
template <class Space>
Rational prefix_free_sum(const CylinderSet<Space>& p) {
  Rational sum = 0;
  for (const auto& c : p.cells()) {
    if (!c.is_explicit()) throw std::invalid_argument("prefix-free sum needs explicit cells");
    sum += c.volume();
  }
  return sum;
}

/// Λ(⟦S⟧): the prefix-free sum over the normalized set for explicit sets,
/// coordinate splitting otherwise.
template <class Space>
Rational cylinder_measure(const CylinderSet<Space>& s) {
  if (s.is_explicit()) return prefix_free_sum(normalize_prefix_free(s));
  return measure(s);
}

inline Rational binary_measure(const BinaryCylinderSet& s) { return cylinder_measure(s); }
inline Rational family_measure(const FamilyCylinderSet& s) { return cylinder_measure(s); }

/// S' with ⟦S'⟧ = ⟦S⟧ ∩ I(t): {t} if a member covers t, plus every member
/// that extends t (free coordinates inside t are pinned to t's symbols).
template <class Space>
CylinderSet<Space> intersect_with_cell(const CylinderSet<Space>& s, const typename Space::Prefix& t) {
  CylinderSet<Space> out;
  bool covered = false;
  for (const auto& c : s.cells()) {
    if (!c.compatible(t)) continue;
    if (c.size() <= t.size()) {
      covered = true;
      continue;
    }
    auto coords = c.coords();
    for (std::size_t i = 0; i < t.size(); ++i) coords[i] = Space::at(t, i);
    out.insert(Cell<Space>(std::move(coords)));
  }
  if (covered) out.insert(t);
  return out;
}

/// F(t) = Λ(⟦S⟧ ∩ I(t)) without materialising the intersection.
template <class Space>
Rational conditional_measure(const CylinderSet<Space>& s, const typename Space::Prefix& t) {
  auto live = detail::compatible_cells(s, t);
  Rational rel = detail::split_measure<Space>(live, t.size());
  return rel * prefix_volume<Space>(t.size());
}

/// F over all one-step extensions t·τ of t. Symbols absent from `by_symbol`
/// share the value `others` (there are `others_count` of them).
template <class Space>
struct ChildMeasures {
  Rational parent;
  std::map<typename Space::Symbol, Rational> by_symbol;
  Rational others;
  BigInt others_count;

  const Rational& at(const typename Space::Symbol& s) const {
    auto it = by_symbol.find(s);
    return it == by_symbol.end() ? others : it->second;
  }
  Rational total() const {
    Rational sum = others * Rational(others_count);
    for (const auto& [sym, v] : by_symbol) sum += v;
    return sum;
  }
};

template <class Space>
ChildMeasures<Space> child_measures(const CylinderSet<Space>& s, const typename Space::Prefix& t) {
  const std::size_t coord = t.size();
  const BigInt& arity = Space::arity(coord);
  const Rational child_volume = prefix_volume<Space>(coord + 1);

  ChildMeasures<Space> out;
  auto live = detail::compatible_cells(s, t);
  out.parent = detail::split_measure<Space>(live, coord) * prefix_volume<Space>(coord);

  for (const auto* c : live) {
    if (c->size() <= coord) {
      out.others = child_volume;
      out.others_count = arity;
      return out;
    }
  }
  std::vector<const Cell<Space>*> wild;
  std::map<typename Space::Symbol, std::vector<const Cell<Space>*>> groups;
  for (const auto* c : live) {
    const auto& sym = (*c)[coord];
    if (sym) {
      groups[*sym].push_back(c);
    } else {
      wild.push_back(c);
    }
  }
  Rational wild_rel = detail::split_measure<Space>(wild, coord + 1);
  for (auto& [sym, group] : groups) {
    bool exhausted = std::any_of(group.begin(), group.end(),
                                 [&](const Cell<Space>* c) { return c->size() <= coord + 1; });
    if (exhausted) {
      out.by_symbol.emplace(sym, child_volume);
      continue;
    }
    group.insert(group.end(), wild.begin(), wild.end());
    out.by_symbol.emplace(sym, detail::split_measure<Space>(group, coord + 1) * child_volume);
  }
  out.others = wild_rel * child_volume;
  out.others_count = arity - static_cast<unsigned long>(out.by_symbol.size());
  return out;
}

/// Some single member covers I(t).
template <class Space>
bool covers(const CylinderSet<Space>& s, const typename Space::Prefix& t) {
  return std::any_of(s.cells().begin(), s.cells().end(), [&](const auto& c) { return c.covers(t); });
}

/// Every cell of `inner` is contained in a single cell of `outer`; a
/// sufficient condition for ⟦inner⟧ ⊆ ⟦outer⟧.
template <class Space>
bool contained_by_cells(const CylinderSet<Space>& inner, const CylinderSet<Space>& outer) {
  for (const auto& p : inner.cells()) {
    bool found = std::any_of(outer.cells().begin(), outer.cells().end(),
                             [&](const auto& q) { return subsumes(q, p); });
    if (!found) return false;
  }
  return true;
}

template <class Space>
CylinderSet<Space> set_union(const std::vector<CylinderSet<Space>>& sets) {
  CylinderSet<Space> out;
  for (const auto& s : sets) out.append(s);
  return out;
}

/// Verdict of the measure-axiom checks on a finite list of sets.
struct MeasureAxiomReport {
  Rational union_measure;
  Rational sum_of_measures;
  bool pairwise_disjoint = false;
  bool subadditive = false;
  bool additive_if_disjoint = false;
  bool holds() const { return subadditive && additive_if_disjoint; }
};

template <class Space>
bool pairwise_disjoint(const std::vector<CylinderSet<Space>>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      CylinderSet<Space> both = sets[i];
      both.append(sets[j]);
      if (cylinder_measure(both) != cylinder_measure(sets[i]) + cylinder_measure(sets[j])) return false;
    }
  }
  return true;
}

/// Λ(⋃ S_i) ≤ Σ Λ(S_i), with equality when the ⟦S_i⟧ are pairwise disjoint.
template <class Space>
MeasureAxiomReport subadditivity_check(const std::vector<CylinderSet<Space>>& sets) {
  MeasureAxiomReport r;
  r.union_measure = cylinder_measure(set_union(sets));
  r.sum_of_measures = 0;
  for (const auto& s : sets) r.sum_of_measures += cylinder_measure(s);
  r.subadditive = r.union_measure <= r.sum_of_measures;
  r.pairwise_disjoint = pairwise_disjoint(sets);
  r.additive_if_disjoint = !r.pairwise_disjoint || r.union_measure == r.sum_of_measures;
  return r;
}

/// When `inner` is cell-wise contained in `outer`, Λ(inner) ≤ Λ(outer).
/// Returns true vacuously when containment does not hold.
template <class Space>
bool monotonicity_check(const CylinderSet<Space>& inner, const CylinderSet<Space>& outer) {
  if (!contained_by_cells(inner, outer)) return true;
  return cylinder_measure(inner) <= cylinder_measure(outer);
}

}  // namespace randinst
