#include "randinst/vm.hpp"

#include <string>

namespace randinst {

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t N) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= N; ++p) {
    if (N % p == 0) {
      out.push_back(p);
      while (N % p == 0) N /= p;
    }
  }
  if (N > 1) out.push_back(N);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

GroupContext::GroupContext(std::uint64_t N, const EncodingFunction& sigma)
    : N_(N), sigma_(&sigma), factors_(distinct_prime_factors(N)) {
  if (N == 0 || N > sigma.domain_size()) {
    throw std::invalid_argument("modulus " + std::to_string(N) + " does not fit encodings of width " +
                                std::to_string(sigma.width()));
  }
}

std::uint64_t GroupContext::decode(std::uint32_t code) const {
  if (code >= sigma_->domain_size()) throw VmError(VmError::Kind::InvalidEncoding, "encoding out of range");
  std::uint64_t x = sigma_->inverse(code);
  if (x >= N_) throw VmError(VmError::Kind::InvalidEncoding, "string is not an encoding of Z_N");
  return x;
}

Machine::Machine(const GenericProgram& prog, const GroupContext& ctx, const std::vector<std::uint64_t>& inputs)
    : prog_(&prog), ctx_(&ctx), inputs_(&inputs) {
  for (auto x : inputs) {
    if (x >= ctx.modulus()) throw VmError(VmError::Kind::BadInput, "input outside Z_N");
  }
}

std::uint32_t Machine::oracle_add(std::uint32_t a, std::uint32_t b) {
  ++queries_;
  return ctx_->encode((ctx_->decode(a) + ctx_->decode(b)) % ctx_->modulus());
}

std::uint32_t Machine::oracle_inv(std::uint32_t a) {
  ++queries_;
  std::uint64_t x = ctx_->decode(a);
  return ctx_->encode((ctx_->modulus() - x) % ctx_->modulus());
}

std::uint32_t Machine::scalar_mul(std::uint64_t k, std::uint32_t h) {
  if (k == 0) return oracle_add(h, oracle_inv(h));
  int top = 63;
  while (!((k >> top) & 1u)) --top;
  std::uint32_t acc = h;
  for (int b = top - 1; b >= 0; --b) {
    acc = oracle_add(acc, acc);
    if ((k >> b) & 1u) acc = oracle_add(acc, h);
  }
  return acc;
}

void Machine::feed_coin(std::uint8_t bit) { pending_coin_ = bit ? 1 : 0; }

Machine::Status Machine::run() {
  const auto& code = prog_->code;
  const std::uint64_t N = ctx_->modulus();
  auto reduce = [N](std::int64_t v) {
    auto n = static_cast<std::int64_t>(N);
    return static_cast<std::uint64_t>(((v % n) + n) % n);
  };
  while (true) {
    if (pc_ >= code.size()) throw VmError(VmError::Kind::FellOff, "fell off the end of the program");
    const Instruction& ins = code[pc_];
    if (ins.op == Opcode::Coin && pending_coin_ < 0) return Status::NeedCoin;
    if (++steps_ > prog_->step_bound) throw VmError(VmError::Kind::StepBound, "step bound exceeded");
    const auto& r = ins.regs;
    std::size_t next = pc_ + 1;
    switch (ins.op) {
      case Opcode::Load:
        if (ins.imm < 0 || static_cast<std::size_t>(ins.imm) >= inputs_->size()) {
          throw VmError(VmError::Kind::BadInput, "no input " + std::to_string(ins.imm));
        }
        g_[r[0]] = ctx_->encode((*inputs_)[ins.imm]);
        break;
      case Opcode::Add:
        g_[r[0]] = oracle_add(g_[r[1]], g_[r[2]]);
        break;
      case Opcode::Inv:
        g_[r[0]] = oracle_inv(g_[r[1]]);
        break;
      case Opcode::Const:
        if (inputs_->empty()) throw VmError(VmError::Kind::BadInput, "const needs input 0");
        g_[r[0]] = scalar_mul(reduce(ins.imm), ctx_->encode((*inputs_)[0]));
        break;
      case Opcode::Smul:
        g_[r[0]] = scalar_mul(reduce(i_[r[2]]), g_[r[1]]);
        break;
      case Opcode::Mov:
        g_[r[0]] = g_[r[1]];
        break;
      case Opcode::Beq:
        if (g_[r[0]] == g_[r[1]]) next = ins.target;
        break;
      case Opcode::Coin:
        if (pending_coin_ == 1) next = ins.target;
        pending_coin_ = -1;
        ++coins_used_;
        break;
      case Opcode::OutI:
        output_.kind = OutputKind::Int;
        output_.value = ins.out == OutSource::Literal    ? ins.imm
                        : ins.out == OutSource::Modulus ? static_cast<std::int64_t>(N)
                                                        : i_[r[0]];
        return Status::Halted;
      case Opcode::OutG:
        output_.kind = OutputKind::Group;
        output_.code = g_[r[0]];
        return Status::Halted;
      case Opcode::OutS:
        output_.kind = OutputKind::String;
        output_.bits = ins.literal;
        return Status::Halted;
      case Opcode::SetI:
        i_[r[0]] = ins.imm;
        break;
      case Opcode::AddI:
        i_[r[0]] += ins.imm;
        break;
      case Opcode::ModN:
        i_[r[0]] = static_cast<std::int64_t>(reduce(i_[r[0]]));
        break;
      case Opcode::SetN:
        i_[r[0]] = static_cast<std::int64_t>(N);
        break;
      case Opcode::Fact: {
        const auto& f = ctx_->prime_factors();
        i_[r[0]] = (ins.imm >= 0 && static_cast<std::size_t>(ins.imm) < f.size())
                       ? static_cast<std::int64_t>(f[ins.imm])
                       : 0;
        break;
      }
      case Opcode::Bits:
        i_[r[0]] = g_[r[1]];
        break;
      case Opcode::BeqI:
        if (i_[r[0]] == ins.imm) next = ins.target;
        break;
      case Opcode::BgeI:
        if (i_[r[0]] >= ins.imm) next = ins.target;
        break;
      case Opcode::Jmp:
        next = ins.target;
        break;
    }
    pc_ = next;
  }
}

RunResult run_generic(const GenericProgram& prog, std::uint64_t N, const EncodingFunction& sigma,
                      const std::vector<std::uint64_t>& inputs, const std::vector<std::uint8_t>& coins) {
  GroupContext ctx(N, sigma);
  Machine m(prog, ctx, inputs);
  std::size_t used = 0;
  while (m.run() == Machine::Status::NeedCoin) {
    if (used >= coins.size()) throw VmError(VmError::Kind::CoinsExhausted, "coin tape exhausted");
    m.feed_coin(coins[used++]);
  }
  return {m.output(), m.queries(), m.coins_used(), m.steps()};
}

}  // namespace randinst
