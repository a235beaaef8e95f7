#pragma once

// Generic-group programs: straight-line code with branches over two register
// files. g-registers hold group encodings (only ever produced by the oracle or
// the input list); i-registers hold machine integers.
//
// Assembly, one instruction per line:
//   load  gA, k        gA := input k
//   add   gA, gB, gC   gA := add(gB, gC)            (one query)
//   inv   gA, gB       gA := inv(gB)                (one query)
//   const gA, c        gA := σ(c mod N) from input 0 by double-and-add
//   smul  gA, gB, iC   gA := (iC mod N)·gB by double-and-add
//   mov   gA, gB
//   beq   gA, gB, L    branch when the encodings are equal
//   coin  L            read a coin; branch when it is 1
//   outi  x            halt with integer x: literal, iK, or N
//   outg  gA           halt with an encoding
//   outs  0101         halt with a literal bit string
//   seti  iA, k    addi iA, k    modn iA    setn iA (iA := N)
//   fact  iA, k        k-th distinct prime factor of N (ascending), else 0
//   bits  iA, gB       read the encoding gB as an unsigned integer
//   beqi  iA, k, L     bgei iA, k, L     jmp L
// Directives: .name TEXT, .steps N, .coins N, .queries N. Labels "name:".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randinst/encoding.hpp"

namespace randinst {

enum class Opcode : std::uint8_t {
  Load, Add, Inv, Const, Smul, Mov, Beq, Coin, OutI, OutG, OutS,
  SetI, AddI, ModN, SetN, Fact, Bits, BeqI, BgeI, Jmp,
};

/// Operand pattern letters: G/I register written, g/i register read, J
/// i-register read and written, k immediate, L label, O integer output
/// operand, S bit-string literal.
struct OpcodeInfo {
  Opcode op;
  const char* mnemonic;
  const char* pattern;
};

const OpcodeInfo& opcode_info(Opcode op);
std::optional<Opcode> opcode_from_mnemonic(const std::string& m);

enum class OutSource : std::uint8_t { Literal, Register, Modulus };

struct Instruction {
  Opcode op = Opcode::OutI;
  std::vector<std::uint8_t> regs;  // register operands in pattern order
  std::int64_t imm = 0;            // k operand, or the literal for outi
  std::size_t target = 0;          // L operand
  OutSource out = OutSource::Literal;
  BinaryString literal;  // outs

  bool operator==(const Instruction&) const = default;
};

struct GenericProgram {
  static constexpr unsigned kRegisters = 32;
  static constexpr unsigned kMaxCoins = 40;

  std::string name = "anonymous";
  std::vector<Instruction> code;
  std::uint64_t step_bound = 10000;
  unsigned coins = 0;
  /// Declared bound on oracle queries along any path, when the program has one.
  std::optional<std::uint64_t> declared_queries;

  bool operator==(const GenericProgram&) const = default;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Branch targets in range, register indices below 32, no fall-through past
/// the last instruction, every register written on all paths before it is
/// read. Throws ProgramError.
void validate(const GenericProgram& prog);

/// Throws ProgramError with a line number.
GenericProgram parse_program(const std::string& text);
GenericProgram load_program(const std::string& path);
std::string format_program(const GenericProgram& prog);

}  // namespace randinst
