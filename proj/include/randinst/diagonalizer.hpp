#pragma once

// Constructive escape from an open set of measure < 1: extend a prefix one
// coordinate at a time, always keeping F(prefix) = Λ(⟦S⟧ ∩ I(prefix))
// strictly below the volume of I(prefix).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "randinst/cylinder.hpp"
#include "randinst/schedules.hpp"

namespace randinst {

class EscapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S = ⋃_m S_m given by an enumerator of finite stages S_1 ⊆ S_2 ⊆ … and an
/// approximator g with |Λ(⟦S⟧) - g(k)| < 2^-k.
template <class Space>
struct EnumeratedOpenSet {
  std::function<CylinderSet<Space>(std::uint64_t m)> stage;
  std::function<Rational(std::uint64_t k)> measure_approx;
  /// Set when ⟦S⟧ is known to equal ⟦finite⟧.
  std::optional<CylinderSet<Space>> finite;
  std::uint64_t stage_cap = 64;

  /// Stage m holds the first m cells; g(k) is the exact measure.
  static EnumeratedOpenSet from_finite(const CylinderSet<Space>& s) {
    EnumeratedOpenSet e;
    auto cells = std::make_shared<const CylinderSet<Space>>(s);
    e.stage = [cells](std::uint64_t m) {
      const auto& all = cells->cells();
      std::size_t take = std::min<std::uint64_t>(m, all.size());
      return CylinderSet<Space>(std::vector<Cell<Space>>(all.begin(), all.begin() + take));
    };
    Rational exact = cylinder_measure(s);
    e.measure_approx = [exact](std::uint64_t) { return exact; };
    e.finite = s;
    e.stage_cap = s.size() + 1;
    return e;
  }
};

/// F(t) = Λ(⟦S⟧ ∩ I(t)), through the explicit intersection.
template <class Space>
Rational conditional_measure_exact(const CylinderSet<Space>& s, const typename Space::Prefix& t) {
  return cylinder_measure(intersect_with_cell(s, t));
}

struct ApproxValue {
  Rational value;      // f(t,k)
  std::uint64_t stage;  // h(t,k)
  Rational g;           // g(k)
};

/// Evaluates f(t,k) = g(k) - Σ_{u≠t} Λ(⟦S_h⟧ ∩ I(u)) with h = h(t,k) the least
/// stage whose measure exceeds g(k) - 2^-k. The sum over the other cells of
/// the same depth is Λ(S_h) - Λ(S_h ∩ I(t)), since those cells partition the
/// space. Stage sets, their measures and g are cached.
template <class Space>
class ApproxEvaluator {
 public:
  explicit ApproxEvaluator(const EnumeratedOpenSet<Space>& s) : s_(&s) {}

  const Rational& g(std::uint64_t k) {
    auto it = g_.find(k);
    if (it == g_.end()) it = g_.emplace(k, s_->measure_approx(k)).first;
    return it->second;
  }

  std::uint64_t h(std::uint64_t k) {
    Rational lower = g(k) - pow2_inverse(k);
    for (std::uint64_t m = 1; m <= s_->stage_cap; ++m) {
      if (stage_measure(m) > lower) return m;
    }
    throw EscapeError("stage search passed the cap of " + std::to_string(s_->stage_cap) +
                      "; the measure approximation is inconsistent with the stages");
  }

  ApproxValue approx(const typename Space::Prefix& t, std::uint64_t k) {
    ApproxValue v;
    v.g = g(k);
    v.stage = h(k);
    v.value = v.g - stage_measure(v.stage) + conditional_measure(stage_set(v.stage), t);
    return v;
  }

  const CylinderSet<Space>& stage_set(std::uint64_t m) {
    auto it = stages_.find(m);
    if (it == stages_.end()) it = stages_.emplace(m, s_->stage(m)).first;
    return it->second;
  }

  const Rational& stage_measure(std::uint64_t m) {
    auto it = measures_.find(m);
    if (it == measures_.end()) it = measures_.emplace(m, cylinder_measure(stage_set(m))).first;
    return it->second;
  }

 private:
  const EnumeratedOpenSet<Space>* s_;
  std::map<std::uint64_t, Rational> g_;
  std::map<std::uint64_t, CylinderSet<Space>> stages_;
  std::map<std::uint64_t, Rational> measures_;
};

template <class Space>
ApproxValue conditional_measure_approx(const EnumeratedOpenSet<Space>& s, const typename Space::Prefix& t,
                                       std::uint64_t k) {
  ApproxEvaluator<Space> ev(s);
  return ev.approx(t, k);
}

enum class EscapeMode { Exact, Approx };

struct EscapeOptions {
  std::uint64_t k_cap = 64;
};

template <class Space>
struct EscapeStep {
  std::size_t level = 0;  // 1-based length of the prefix after this step
  BigInt candidate_count;
  std::uint64_t chosen_index = 0;  // position of τ in lexicographic order
  std::optional<typename Space::Symbol> chosen;
  Rational chosen_F;  // exact F(prefix·τ), or f(prefix·τ, k) in approx mode
  Rational cell_volume;
  Rational margin;  // 0 in exact mode; 2^-k in approx mode
  std::uint64_t precision = 0;
  Rational parent_F;
  Rational children_sum;  // Σ_τ F(prefix·τ); exact mode only
  bool averaging_identity = false;
  bool invariant_holds() const { return chosen_F + margin < cell_volume; }
};

template <class Space>
struct EscapeTranscript {
  EscapeMode mode = EscapeMode::Exact;
  typename Space::Prefix prefix;
  Rational initial_F;  // F(λ) = Λ(⟦S⟧), or the g(k) that certified it < 1
  std::vector<EscapeStep<Space>> steps;

  bool invariants_hold() const {
    for (const auto& s : steps) {
      if (!s.invariant_holds()) return false;
      if (mode == EscapeMode::Exact && !s.averaging_identity) return false;
    }
    return true;
  }
};

template <class Space>
EscapeTranscript<Space> escape(const EnumeratedOpenSet<Space>& S, std::size_t depth, EscapeMode mode,
                               const EscapeOptions& opt = {}) {
  EscapeTranscript<Space> tr;
  tr.mode = mode;
  ApproxEvaluator<Space> ev(S);

  if (mode == EscapeMode::Exact) {
    if (!S.finite) throw EscapeError("exact mode needs a finite set");
    tr.initial_F = cylinder_measure(*S.finite);
    if (tr.initial_F >= 1) {
      throw EscapeError("measure of the open set is " + to_fraction_string(tr.initial_F) + ", not below 1");
    }
  } else {
    bool certified = false;
    for (std::uint64_t k = 1; k <= opt.k_cap && !certified; ++k) {
      if (ev.g(k) < 1 - pow2_inverse(k)) {
        tr.initial_F = ev.g(k);
        certified = true;
      }
    }
    if (!certified) throw EscapeError("could not certify a measure below 1 up to precision " + std::to_string(opt.k_cap));
  }

  Rational parent_F = tr.initial_F;
  for (std::size_t level = 0; level < depth; ++level) {
    EscapeStep<Space> step;
    step.level = level + 1;
    step.candidate_count = Space::arity(level);
    step.cell_volume = prefix_volume<Space>(level + 1);
    step.parent_F = parent_F;
    bool found = false;
    auto tau = Space::first_symbol(level);
    std::uint64_t index = 0;

    if (mode == EscapeMode::Exact) {
      auto cm = child_measures(*S.finite, tr.prefix);
      step.children_sum = cm.total();
      step.averaging_identity = step.children_sum == cm.parent && cm.parent == parent_F;
      do {
        const Rational& F = cm.at(tau);
        if (F < step.cell_volume) {
          step.chosen_F = F;
          found = true;
          break;
        }
        ++index;
      } while (Space::next_symbol(tau));
    } else {
      do {
        auto t = tr.prefix;
        Space::push(t, tau);
        std::map<std::uint64_t, Rational> by_stage;
        for (std::uint64_t k = 1; k <= opt.k_cap; ++k) {
          Rational gk = ev.g(k);
          std::uint64_t h = ev.h(k);
          auto it = by_stage.find(h);
          if (it == by_stage.end()) it = by_stage.emplace(h, conditional_measure(ev.stage_set(h), t)).first;
          Rational f = gk - ev.stage_measure(h) + it->second;
          Rational eps = pow2_inverse(k);
          if (f + eps < step.cell_volume) {
            step.chosen_F = f;
            step.margin = eps;
            step.precision = k;
            found = true;
            break;
          }
          if (f - eps >= step.cell_volume) break;
        }
        if (found) break;
        ++index;
      } while (Space::next_symbol(tau));
    }
    if (!found) throw EscapeError("no extension keeps the conditional measure below the cell volume");
    step.chosen = tau;
    step.chosen_index = index;
    Space::push(tr.prefix, tau);
    parent_F = step.chosen_F;
    tr.steps.push_back(std::move(step));
  }
  return tr;
}

template <class Space>
EscapeTranscript<Space> escape_binary(const EnumeratedOpenSet<Space>& S, std::size_t depth, EscapeMode mode,
                                      const EscapeOptions& opt = {}) {
  static_assert(std::is_same_v<Space, BinarySpace>);
  return escape(S, depth, mode, opt);
}

inline EscapeTranscript<FamilySpace> escape_family(const EnumeratedOpenSet<FamilySpace>& S, std::size_t depth,
                                                   EscapeMode mode, const EscapeOptions& opt = {}) {
  if (depth > 3) throw std::invalid_argument("family escape is limited to depth 3");
  return escape(S, depth, mode, opt);
}

/// True iff no member of S contains I(prefix) and I(prefix) is not covered by
/// the union either, i.e. the prefix still has extensions outside ⟦S⟧.
template <class Space>
bool verify_escape(const typename Space::Prefix& prefix, const CylinderSet<Space>& s) {
  if (covers(s, prefix)) return false;
  return cylinder_measure(intersect_with_cell(s, prefix)) < prefix_volume<Space>(prefix.size());
}

/// step, candidates, chosen index, chosen symbol, F, cell volume, margin, precision.
template <class Space>
std::string format_transcript(const EscapeTranscript<Space>& tr) {
  std::ostringstream out;
  out << "# mode " << (tr.mode == EscapeMode::Exact ? "exact" : "approx") << '\n';
  out << "# initial " << to_fraction_string(tr.initial_F) << '\n';
  out << "step\tcandidates\tchosen_index\tF_num\tF_den\tcell_volume\tmargin\tprecision\tidentity\tsymbol\n";
  for (const auto& s : tr.steps) {
    out << s.level << '\t' << to_string(s.candidate_count) << '\t' << s.chosen_index << '\t'
        << to_string(s.chosen_F.get_num()) << '\t' << to_string(s.chosen_F.get_den()) << '\t'
        << to_fraction_string(s.cell_volume) << '\t' << to_fraction_string(s.margin) << '\t' << s.precision << '\t'
        << (tr.mode == EscapeMode::Exact ? (s.averaging_identity ? "ok" : "FAIL") : "-") << '\t'
        << Space::format(*s.chosen) << '\n';
  }
  out << "prefix\t" << tr.prefix.to_string() << '\n';
  return out.str();
}

// --- assembling test families into one open set --------------------------

template <class Space>
using TestFamily = std::function<CylinderSet<Space>(std::uint64_t i, std::uint64_t d, std::uint64_t n)>;

template <class Space>
struct MaterializedPart {
  std::uint64_t m, i, d, n;
  CylinderSet<Space> set;
  Rational measure;
};

template <class Space>
struct AssembledOpenSet {
  EnumeratedOpenSet<Space> open_set;
  std::vector<MaterializedPart<Space>> parts;
  std::uint64_t horizon = 0;
  /// Every materialised constraint set is empty.
  bool vacuous() const {
    for (const auto& p : parts) {
      if (!p.set.empty()) return false;
    }
    return true;
  }
};

/// C = ⋃_m ⋃_{n ≥ g(m)} C_{φ(m), n}, materialised for n ≤ horizon. Stage k is
/// D_k = ⋃_{m≤k} ⋃_{n=g(m)}^{g(m)2^k-1} C_{φ(m),n} and g(k) = Λ(D_{k+1}).
/// Requires g(m) ≥ m + 1 so that only m < horizon contribute. Throws
/// EscapeError when a materialised set breaks Λ(C_{i,d,n}) < 1/n^d.
template <class Space>
AssembledOpenSet<Space> assemble_open_set(const TestFamily<Space>& family, const EscapeSchedule& g,
                                          std::uint64_t horizon, std::uint64_t stage_cap = 128) {
  auto parts = std::make_shared<std::vector<MaterializedPart<Space>>>();
  auto cutoffs = std::make_shared<std::map<std::uint64_t, BigInt>>();
  for (std::uint64_t m = 1; m < std::max<std::uint64_t>(horizon, 1); ++m) {
    BigInt gm = g(m);
    if (gm < BigInt(static_cast<unsigned long>(m + 1))) throw EscapeError("escape schedule must satisfy g(m) >= m+1");
    (*cutoffs)[m] = gm;
    if (gm > BigInt(static_cast<unsigned long>(horizon))) continue;
    auto [i, d] = phi(m);
    for (std::uint64_t n = gm.get_ui(); n <= horizon; ++n) {
      MaterializedPart<Space> p{m, i, d, n, family(i, d, n), 0};
      p.measure = cylinder_measure(p.set);
      if (p.measure >= make_rational(1, pow(BigInt(static_cast<unsigned long>(n)), d))) {
        throw EscapeError("materialised set C_{" + std::to_string(i) + "," + std::to_string(d) + "," +
                          std::to_string(n) + "} has measure " + to_fraction_string(p.measure) +
                          ", not below 1/n^d");
      }
      parts->push_back(std::move(p));
    }
  }

  auto D = [parts, cutoffs](std::uint64_t k) {
    CylinderSet<Space> out;
    for (const auto& p : *parts) {
      if (p.m > k) continue;
      BigInt last = (*cutoffs).at(p.m) * pow2(k) - 1;
      if (BigInt(static_cast<unsigned long>(p.n)) <= last) out.append(p.set);
    }
    return out;
  };
  auto memo = std::make_shared<std::map<std::uint64_t, Rational>>();

  AssembledOpenSet<Space> out;
  out.horizon = horizon;
  out.parts = *parts;
  out.open_set.stage = D;
  out.open_set.measure_approx = [D, memo](std::uint64_t k) {
    auto it = memo->find(k);
    if (it == memo->end()) it = memo->emplace(k, cylinder_measure(D(k + 1))).first;
    return it->second;
  };
  out.open_set.finite = D(horizon + 1);
  out.open_set.stage_cap = stage_cap;
  return out;
}

}  // namespace randinst
