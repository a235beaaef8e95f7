#pragma once

// Interpreter for generic-group programs. The group is Z_N presented through
// an encoding σ; programs see only encodings and reach the group law through
// add/inv oracle calls, each of which is counted.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "randinst/program.hpp"

namespace randinst {

enum class OutputKind : std::uint8_t { Int, Group, String };

struct Output {
  OutputKind kind = OutputKind::Int;
  std::int64_t value = 0;  // Int
  std::uint32_t code = 0;  // Group: the encoding as an integer
  BinaryString bits;       // String

  bool operator==(const Output&) const = default;
};

class VmError : public std::runtime_error {
 public:
  enum class Kind { CoinsExhausted, StepBound, InvalidEncoding, BadInput, FellOff };
  VmError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Z_N with encoding σ. Requires 2 ≤ N ≤ 2^width(σ) (N = 1 is allowed for
/// the trivial group as well).
class GroupContext {
 public:
  GroupContext(std::uint64_t N, const EncodingFunction& sigma);

  std::uint64_t modulus() const { return N_; }
  const EncodingFunction& sigma() const { return *sigma_; }
  const std::vector<std::uint64_t>& prime_factors() const { return factors_; }

  std::uint32_t encode(std::uint64_t x) const { return (*sigma_)(static_cast<std::uint32_t>(x)); }
  /// σ⁻¹(code); throws VmError when code is not the encoding of an element of Z_N.
  std::uint64_t decode(std::uint32_t code) const;

 private:
  std::uint64_t N_;
  const EncodingFunction* sigma_;
  std::vector<std::uint64_t> factors_;
};

class Machine {
 public:
  enum class Status { Halted, NeedCoin };

  /// `inputs` are exponents in Z_N; the program receives σ(inputs[k]).
  Machine(const GenericProgram& prog, const GroupContext& ctx, const std::vector<std::uint64_t>& inputs);

  /// Runs until the program halts or reads a coin not yet supplied.
  Status run();
  void feed_coin(std::uint8_t bit);

  const Output& output() const { return output_; }
  std::uint64_t queries() const { return queries_; }
  unsigned coins_used() const { return coins_used_; }
  std::uint64_t steps() const { return steps_; }

 private:
  std::uint32_t oracle_add(std::uint32_t a, std::uint32_t b);
  std::uint32_t oracle_inv(std::uint32_t a);
  std::uint32_t scalar_mul(std::uint64_t k, std::uint32_t h);

  const GenericProgram* prog_;
  const GroupContext* ctx_;
  const std::vector<std::uint64_t>* inputs_;
  std::array<std::uint32_t, GenericProgram::kRegisters> g_{};
  std::array<std::int64_t, GenericProgram::kRegisters> i_{};
  std::size_t pc_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t queries_ = 0;
  unsigned coins_used_ = 0;
  int pending_coin_ = -1;
  Output output_;
};

struct RunResult {
  Output output;
  std::uint64_t queries = 0;
  unsigned coins_used = 0;
  std::uint64_t steps = 0;
};

/// Deterministic single run on an explicit coin tape. Throws VmError.
RunResult run_generic(const GenericProgram& prog, std::uint64_t N, const EncodingFunction& sigma,
                      const std::vector<std::uint64_t>& inputs, const std::vector<std::uint8_t>& coins);

/// Visits every halting path of the coin tree exactly once. A path that read
/// `depth` coins has probability 2^-depth. `visit(const Machine&)`.
template <class Visit>
void explore_paths(Machine m, unsigned max_coins, Visit&& visit) {
  while (m.run() == Machine::Status::NeedCoin) {
    if (m.coins_used() >= max_coins) {
      throw VmError(VmError::Kind::CoinsExhausted, "program reads more coins than declared");
    }
    Machine one = m;
    one.feed_coin(1);
    explore_paths(one, max_coins, visit);
    m.feed_coin(0);
  }
  visit(m);
}

/// The distinct prime factors of N in ascending order.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t N);
bool is_prime(std::uint64_t n);

}  // namespace randinst
