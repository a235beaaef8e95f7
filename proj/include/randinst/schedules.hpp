#pragma once

// Counting and tail lemmas, the pairing bijections, and the schedules f
// (security cutoff) and g (escape cutoff).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randinst/rational.hpp"

namespace randinst {

struct MarkovResult {
  std::uint64_t count = 0;  // #{i : v_i > αε}
  Rational bound;           // N/α
  Rational mean;
  bool holds = false;  // mean ≤ ε ⇒ count < bound
};

/// Throws std::invalid_argument on empty input or α ≤ 0.
MarkovResult markov_exceed_count(const std::vector<Rational>& values, const Rational& epsilon,
                                 const Rational& alpha);

struct TailBoundResult {
  Rational lower;      // Σ_{k=n}^{n+P} 1/k^d
  Rational remainder;  // 1/((d-1)(n+P)^{d-1})
  Rational bound;      // 2/n
  bool holds = false;
};

/// Throws std::invalid_argument when d < 2 or n == 0.
TailBoundResult tail_bound_check(std::uint64_t n, std::uint64_t d, std::uint64_t partial_terms);

/// 2^n ≥ n^d on [d², n_max]. Throws when d < 4.
bool power_threshold_check(std::uint64_t d, std::uint64_t n_max);

std::uint64_t cantor_pair(std::uint64_t m, std::uint64_t n);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

/// N⁺ → {(i,d): i ≥ 1, d ≥ 2}: m ↦ (a+1, b+2) with (a,b) = unpair(m-1).
std::pair<std::uint64_t, std::uint64_t> phi(std::uint64_t m);
std::uint64_t phi_inverse(std::uint64_t i, std::uint64_t d);

/// max((2k+d+1)², 2C).
BigInt dlog_schedule(std::uint64_t k, std::uint64_t d, std::uint64_t C);

/// A cutoff function f: N⁺ × N⁺ → N⁺.
class Schedule {
 public:
  enum class Kind { DlogPaper, Constant, Table };

  static Schedule dlog(std::uint64_t C);
  static Schedule constant(std::uint64_t value);
  static Schedule table(std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> entries);
  /// Lines "k d N"; '#' comments. Throws std::invalid_argument on bad input.
  static Schedule load_table(const std::string& path);

  /// Throws std::out_of_range for a pair missing from a table.
  BigInt operator()(std::uint64_t k, std::uint64_t d) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  std::uint64_t param_ = 1;
  std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> table_;
};

/// (f(φ₁(m), 2φ₂(m)) + 1)^{m+1}.
BigInt escape_schedule(std::uint64_t m, const Schedule& f);

/// The g used when assembling test families into one open set.
class EscapeSchedule {
 public:
  static EscapeSchedule paper(Schedule f);
  /// g(m) = m + 1; small enough that shallow escapes meet constraints.
  static EscapeSchedule compressed();

  BigInt operator()(std::uint64_t m) const;
  std::string name() const;
  bool is_paper() const { return f_.has_value(); }

 private:
  std::optional<Schedule> f_;
};

struct ScheduleChainResult {
  BigInt start;                           // f(k,d)
  std::optional<std::uint64_t> failure;  // first n with n^{2k+1}·n^d > 2^n
  bool holds() const { return !failure; }
};

/// n^{2k+1}/2^n ≤ 1/n^d for every n in [f(k,d), f(k,d)+span], f = dlog_schedule.
ScheduleChainResult schedule_chain_check(std::uint64_t k, std::uint64_t d, std::uint64_t C,
                                         std::uint64_t span = 50);

}  // namespace randinst
