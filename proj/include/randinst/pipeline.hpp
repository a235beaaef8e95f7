#pragma once

// Generic-group test families C_{i,d,n} ⊂ Encf^* and the end-to-end run:
// assemble them under an escape schedule, escape, and check the result.

#include <cstdint>
#include <string>
#include <vector>

#include "randinst/diagonalizer.hpp"
#include "randinst/experiments.hpp"

namespace randinst {

struct GgmTestFamily {
  FamilyCylinderSet set;  // one cell (*,…,*,σ) per bad σ of width n
  std::uint64_t bad_count = 0;
  Rational measure;  // bad_count / (2^n)!
};

/// The σ ∈ Encf_n with DLog success > 1/n^d. Empty for n = 1, which has no
/// n-bit prime. Throws std::invalid_argument above the cap.
GgmTestFamily build_ggm_testfamily(const GenericProgram& prog, std::uint64_t d, std::uint64_t n,
                                   unsigned exhaustive_cap = 3);

/// A_1 … A_5 of the toy run; indices beyond the registry denote a program
/// that never succeeds, whose test sets are empty.
std::vector<GenericProgram> toy_registry();

struct PipelineCheck {
  std::uint64_t m, i, d, n;
  std::uint64_t bad_count;
  Rational measure;
  bool escaped;     // verify_escape against C_{i,d,n}
  Rational success;  // of A_i on σ_n, the prefix's n-th entry
  bool bounded;      // success ≤ 1/n^d
};

struct PipelineReport {
  std::string schedule;
  std::uint64_t horizon = 0;
  bool vacuous = false;
  Rational total_measure;
  EscapeTranscript<FamilySpace> transcript;
  bool verified = false;  // verify_escape against the whole assembled set
  std::vector<PipelineCheck> checks;

  bool ok() const;
};

PipelineReport run_ggm_pipeline(const EscapeSchedule& g, std::size_t depth = 3,
                                EscapeMode mode = EscapeMode::Exact);
std::string format_pipeline_report(const PipelineReport& r);

}  // namespace randinst
