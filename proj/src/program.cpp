#include "randinst/program.hpp"

#include <array>
#include <cstring>

namespace randinst {
namespace {

constexpr std::array<OpcodeInfo, 20> kOpcodes = {{
    {Opcode::Load, "load", "Gk"},   {Opcode::Add, "add", "Ggg"},    {Opcode::Inv, "inv", "Gg"},
    {Opcode::Const, "const", "Gk"}, {Opcode::Smul, "smul", "Ggi"},  {Opcode::Mov, "mov", "Gg"},
    {Opcode::Beq, "beq", "ggL"},    {Opcode::Coin, "coin", "L"},    {Opcode::OutI, "outi", "O"},
    {Opcode::OutG, "outg", "g"},    {Opcode::OutS, "outs", "S"},    {Opcode::SetI, "seti", "Ik"},
    {Opcode::AddI, "addi", "Jk"},   {Opcode::ModN, "modn", "J"},    {Opcode::SetN, "setn", "I"},
    {Opcode::Fact, "fact", "Ik"},   {Opcode::Bits, "bits", "Ig"},   {Opcode::BeqI, "beqi", "ikL"},
    {Opcode::BgeI, "bgei", "ikL"},  {Opcode::Jmp, "jmp", "L"},
}};

bool is_terminal(Opcode op) {
  return op == Opcode::OutI || op == Opcode::OutG || op == Opcode::OutS || op == Opcode::Jmp;
}

// Defined-register sets: bit r for g-register r, bit 32+r for i-register r.
using RegSet = std::uint64_t;

std::uint64_t reg_bit(char letter, std::uint8_t r) {
  bool integer = letter == 'I' || letter == 'i' || letter == 'J';
  return std::uint64_t{1} << (integer ? 32 + r : r);
}

}  // namespace

const OpcodeInfo& opcode_info(Opcode op) { return kOpcodes[static_cast<std::size_t>(op)]; }

std::optional<Opcode> opcode_from_mnemonic(const std::string& m) {
  for (const auto& info : kOpcodes) {
    if (m == info.mnemonic) return info.op;
  }
  return std::nullopt;
}

void validate(const GenericProgram& prog) {
  const auto& code = prog.code;
  if (code.empty()) throw ProgramError(prog.name + ": empty program");
  if (prog.coins > GenericProgram::kMaxCoins) throw ProgramError(prog.name + ": too many coins");
  if (prog.step_bound == 0) throw ProgramError(prog.name + ": step bound must be positive");
  if (!is_terminal(code.back().op)) {
    throw ProgramError(prog.name + ": last instruction can fall off the end");
  }

  std::vector<std::vector<std::size_t>> succ(code.size());
  for (std::size_t pc = 0; pc < code.size(); ++pc) {
    const auto& ins = code[pc];
    const char* pat = opcode_info(ins.op).pattern;
    std::size_t nregs = 0;
    for (const char* p = pat; *p; ++p) {
      if (std::strchr("GgIiJ", *p)) ++nregs;
    }
    if (ins.op == Opcode::OutI && ins.out == OutSource::Register) ++nregs;
    if (ins.regs.size() != nregs) throw ProgramError(prog.name + ": operand count mismatch at " + std::to_string(pc));
    for (auto r : ins.regs) {
      if (r >= GenericProgram::kRegisters) throw ProgramError(prog.name + ": register out of range");
    }
    bool has_label = std::strchr(pat, 'L') != nullptr;
    if (has_label && ins.target >= code.size()) {
      throw ProgramError(prog.name + ": branch target out of range at " + std::to_string(pc));
    }
    if (has_label) succ[pc].push_back(ins.target);
    if (!is_terminal(ins.op)) succ[pc].push_back(pc + 1);
  }

  // Must-defined dataflow: in[pc] = ∩ out[pred]; unreachable code is ignored.
  const RegSet all = ~RegSet{0};
  std::vector<RegSet> in(code.size(), all);
  std::vector<bool> reached(code.size(), false);
  in[0] = 0;
  reached[0] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t pc = 0; pc < code.size(); ++pc) {
      if (!reached[pc]) continue;
      const auto& ins = code[pc];
      RegSet out = in[pc];
      const char* pat = opcode_info(ins.op).pattern;
      std::size_t ri = 0;
      for (const char* p = pat; *p; ++p) {
        if (*p == 'G' || *p == 'I' || *p == 'J') out |= reg_bit(*p, ins.regs[ri]);
        if (std::strchr("GgIiJ", *p)) ++ri;
      }
      for (auto s : succ[pc]) {
        RegSet merged = reached[s] ? (in[s] & out) : out;
        if (!reached[s] || merged != in[s]) {
          in[s] = merged;
          reached[s] = true;
          changed = true;
        }
      }
    }
  }
  for (std::size_t pc = 0; pc < code.size(); ++pc) {
    if (!reached[pc]) continue;
    const auto& ins = code[pc];
    const char* pat = opcode_info(ins.op).pattern;
    std::size_t ri = 0;
    auto check = [&](char letter, std::uint8_t r) {
      if (!(in[pc] & reg_bit(letter, r))) {
        throw ProgramError(prog.name + ": " + (letter == 'g' ? "g" : "i") + std::to_string(r) +
                           " read before written at instruction " + std::to_string(pc));
      }
    };
    for (const char* p = pat; *p; ++p) {
      if (*p == 'g' || *p == 'i' || *p == 'J') check(*p == 'g' ? 'g' : 'i', ins.regs[ri]);
      if (std::strchr("GgIiJ", *p)) ++ri;
    }
    if (ins.op == Opcode::OutI && ins.out == OutSource::Register) check('i', ins.regs[0]);
  }
}

}  // namespace randinst
