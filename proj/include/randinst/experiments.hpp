#pragma once

// DLog and CDH experiments in the generic group model, exact by enumeration
// over σ, the modulus, exponents and coin tapes, or sampled over σ.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randinst/program.hpp"
#include "randinst/rational.hpp"

namespace randinst {

/// Primes in [2^{n-1}, 2^n). Throws std::invalid_argument for n < 2.
std::vector<std::uint64_t> n_bit_primes(unsigned n);

enum class ExperimentKind { DLog, CDH };
enum class Mode { Exhaustive, Sampled };

struct ExperimentOptions {
  Mode mode = Mode::Exhaustive;
  std::optional<std::uint64_t> seed;  // required in sampled mode
  std::uint64_t samples = 2000;
  unsigned exhaustive_cap = 3;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ExperimentResult {
  std::string program;
  ExperimentKind kind = ExperimentKind::DLog;
  unsigned n = 0;
  std::optional<std::uint64_t> modulus;  // set for the fixed-N experiment
  Mode mode = Mode::Exhaustive;
  Rational success;  // exact average; in sampled mode the exact mean of the sample
  double estimate = 0;
  double std_error = 0;  // 0 in exhaustive mode
  std::uint64_t max_queries = 0;
  std::uint64_t sigma_count = 0;
  std::optional<std::uint64_t> seed;
};

struct SigmaOutcome {
  Rational success;
  std::uint64_t max_queries = 0;
};

/// Average over n-bit primes p, exponents and coins for one σ of width n.
SigmaOutcome dlog_outcome_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma);
SigmaOutcome cdh_outcome_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma);
Rational dlog_success_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma);
Rational cdh_success_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma);

/// Fixed group order N instead of a random n-bit prime, for one σ.
SigmaOutcome fixed_modulus_outcome(const GenericProgram& prog, ExperimentKind kind, std::uint64_t N,
                                   const EncodingFunction& sigma);

/// Averages over σ ∈ Encf_n. Exhaustive mode throws std::invalid_argument
/// above the cap; sampled mode throws without a seed.
ExperimentResult dlog_success_ggm(const GenericProgram& prog, unsigned n, const ExperimentOptions& opt = {});
ExperimentResult cdh_success_ggm(const GenericProgram& prog, unsigned n, const ExperimentOptions& opt = {});
/// DLog with the fixed order N, 2 ≤ N ≤ 2^n - 1, averaged over σ ∈ Encf_n.
ExperimentResult dlog_fixed_modulus(const GenericProgram& prog, unsigned n, std::uint64_t N,
                                    const ExperimentOptions& opt = {});

struct ShoupAudit {
  ExperimentResult result;
  std::uint64_t p = 0;  // largest prime divisor of N
  Rational C;
  Rational bound;  // C·m²/p
  bool holds = false;
};

ShoupAudit shoup_audit(const GenericProgram& prog, unsigned n, std::uint64_t N, const Rational& C,
                       const ExperimentOptions& opt = {});

struct ShoupGridPoint {
  GenericProgram prog;
  unsigned n;
  std::uint64_t N;
};

struct MinimalShoupConstant {
  Rational constant;  // max over the grid of success·p/m²
  std::vector<ShoupAudit> audits;
};

/// Throws std::invalid_argument on an empty grid or a point with m = 0.
MinimalShoupConstant minimal_shoup_constant(const std::vector<ShoupGridPoint>& grid,
                                            const ExperimentOptions& opt = {});

/// Uniform σ ∈ Encf_n from a seeded generator (Fisher–Yates).
EncodingFunction random_encoding(unsigned width, std::uint64_t& state_seed);

}  // namespace randinst
