#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "randinst/program.hpp"

namespace randinst {
namespace {

struct RawLine {
  std::size_t lineno;
  std::string mnemonic;
  std::vector<std::string> operands;
};

std::vector<std::string> split_operands(const std::string& rest) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : rest) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
  throw ProgramError("line " + std::to_string(lineno) + ": " + msg);
}

std::int64_t parse_int(std::size_t lineno, const std::string& tok) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used, 0);
  } catch (const std::exception&) {
    fail(lineno, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) fail(lineno, "expected an integer, got '" + tok + "'");
  return v;
}

std::uint8_t parse_reg(std::size_t lineno, const std::string& tok, char bank) {
  if (tok.size() < 2 || tok[0] != bank) {
    fail(lineno, std::string("expected a ") + bank + "-register, got '" + tok + "'");
  }
  auto v = parse_int(lineno, tok.substr(1));
  if (v < 0 || v >= static_cast<std::int64_t>(GenericProgram::kRegisters)) {
    fail(lineno, "register index out of range in '" + tok + "'");
  }
  return static_cast<std::uint8_t>(v);
}

std::uint64_t parse_positive(std::size_t lineno, const std::string& tok) {
  auto v = parse_int(lineno, tok);
  if (v < 0) fail(lineno, "expected a non-negative value");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

GenericProgram parse_program(const std::string& text) {
  GenericProgram prog;
  std::vector<RawLine> raw;
  std::map<std::string, std::size_t> labels;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    bool more = true;
    while (more && head.back() == ':') {
      head.pop_back();
      if (head.empty()) fail(lineno, "empty label");
      if (!labels.emplace(head, raw.size()).second) fail(lineno, "duplicate label '" + head + "'");
      more = static_cast<bool>(ls >> head);
    }
    if (!more) continue;
    std::string rest;
    std::getline(ls, rest);
    if (head[0] == '.') {
      auto args = split_operands(rest);
      if (head == ".name") {
        auto b = rest.find_first_not_of(" \t");
        auto e = rest.find_last_not_of(" \t\r");
        if (b == std::string::npos) fail(lineno, ".name needs a value");
        prog.name = rest.substr(b, e - b + 1);
        continue;
      }
      if (args.size() != 1) fail(lineno, head + " takes one value");
      if (head == ".steps") {
        prog.step_bound = parse_positive(lineno, args[0]);
      } else if (head == ".coins") {
        prog.coins = static_cast<unsigned>(parse_positive(lineno, args[0]));
      } else if (head == ".queries") {
        prog.declared_queries = parse_positive(lineno, args[0]);
      } else {
        fail(lineno, "unknown directive " + head);
      }
      continue;
    }
    raw.push_back({lineno, head, split_operands(rest)});
  }

  for (const auto& r : raw) {
    auto op = opcode_from_mnemonic(r.mnemonic);
    if (!op) fail(r.lineno, "unknown instruction '" + r.mnemonic + "'");
    Instruction ins;
    ins.op = *op;
    const std::string pat = opcode_info(*op).pattern;
    if (r.operands.size() != pat.size()) {
      fail(r.lineno, r.mnemonic + " takes " + std::to_string(pat.size()) + " operand(s)");
    }
    for (std::size_t k = 0; k < pat.size(); ++k) {
      const std::string& tok = r.operands[k];
      switch (pat[k]) {
        case 'G':
        case 'g':
          ins.regs.push_back(parse_reg(r.lineno, tok, 'g'));
          break;
        case 'I':
        case 'i':
        case 'J':
          ins.regs.push_back(parse_reg(r.lineno, tok, 'i'));
          break;
        case 'k':
          ins.imm = parse_int(r.lineno, tok);
          break;
        case 'L': {
          auto it = labels.find(tok);
          if (it == labels.end()) fail(r.lineno, "unknown label '" + tok + "'");
          ins.target = it->second;
          break;
        }
        case 'O':
          if (tok == "N") {
            ins.out = OutSource::Modulus;
          } else if (tok[0] == 'i') {
            ins.out = OutSource::Register;
            ins.regs.push_back(parse_reg(r.lineno, tok, 'i'));
          } else {
            ins.out = OutSource::Literal;
            ins.imm = parse_int(r.lineno, tok);
          }
          break;
        case 'S':
          try {
            ins.literal = BinaryString::parse(tok);
          } catch (const std::invalid_argument& e) {
            fail(r.lineno, e.what());
          }
          break;
      }
    }
    prog.code.push_back(std::move(ins));
  }
  for (const auto& [name, pc] : labels) {
    if (pc >= prog.code.size()) throw ProgramError("label '" + name + "' has no instruction after it");
  }
  validate(prog);
  return prog;
}

GenericProgram load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProgramError("cannot open program file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

std::string format_program(const GenericProgram& prog) {
  std::set<std::size_t> targets;
  for (const auto& ins : prog.code) {
    if (std::string(opcode_info(ins.op).pattern).find('L') != std::string::npos) targets.insert(ins.target);
  }
  std::ostringstream out;
  out << ".name " << prog.name << '\n';
  out << ".steps " << prog.step_bound << '\n';
  if (prog.coins) out << ".coins " << prog.coins << '\n';
  if (prog.declared_queries) out << ".queries " << *prog.declared_queries << '\n';
  for (std::size_t pc = 0; pc < prog.code.size(); ++pc) {
    const auto& ins = prog.code[pc];
    if (targets.count(pc)) out << 'L' << pc << ":\n";
    const std::string pat = opcode_info(ins.op).pattern;
    out << "  " << opcode_info(ins.op).mnemonic;
    std::size_t ri = 0;
    for (std::size_t k = 0; k < pat.size(); ++k) {
      out << (k ? ", " : " ");
      switch (pat[k]) {
        case 'G':
        case 'g':
          out << 'g' << int(ins.regs[ri++]);
          break;
        case 'I':
        case 'i':
        case 'J':
          out << 'i' << int(ins.regs[ri++]);
          break;
        case 'k':
          out << ins.imm;
          break;
        case 'L':
          out << 'L' << ins.target;
          break;
        case 'O':
          if (ins.out == OutSource::Modulus) {
            out << 'N';
          } else if (ins.out == OutSource::Register) {
            out << 'i' << int(ins.regs[ri++]);
          } else {
            out << ins.imm;
          }
          break;
        case 'S':
          out << ins.literal.to_string();
          break;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace randinst
