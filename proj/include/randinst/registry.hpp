#pragma once

// Built-in generic-group programs. Each is produced as assembly text and goes
// through the same parser as user programs.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "randinst/program.hpp"

namespace randinst {

/// Outputs c after `dummy_queries` useless add calls.
GenericProgram make_const_guess(std::int64_t c, std::uint64_t dummy_queries = 0);
/// Outputs N, which is never in Z_N.
GenericProgram make_invalid_guess();
/// Outputs a uniform integer in [0, 2^bits).
GenericProgram make_random_guess(unsigned bits);
/// Compares σ(x) with σ(1),…,σ(m+1) using m add calls; outputs the index
/// mod N on a hit and -1 otherwise.
GenericProgram make_linear_search(std::uint64_t m);
/// (baby steps b, giant steps G) maximising b·G with (b-1) + [G>1]·G ≤ m.
std::pair<std::uint64_t, std::uint64_t> bsgs_parameters(std::uint64_t m);
GenericProgram make_bsgs(std::uint64_t m);
/// Outputs bits(σ(x)); succeeds exactly when σ fixes x.
GenericProgram make_fixed_point_guess();
/// Full search when bits(σ(1)) = k1 and bits(σ(2 mod N)) = k2, else -1.
GenericProgram make_keyed_search(std::int64_t k1, std::int64_t k2);
/// CDH: outputs input i unchanged.
GenericProgram make_echo_input(unsigned i);
/// CDH: outputs a fixed bit string.
GenericProgram make_const_string(const BinaryString& s);

/// "name", "name:a,b" or "file:PATH". Throws ProgramError.
GenericProgram program_from_spec(const std::string& spec);
std::vector<std::string> registry_names();

}  // namespace randinst
