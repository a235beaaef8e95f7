#include "randinst/toy_fdh.hpp"

#include <set>
#include <stdexcept>

namespace randinst {
namespace {

std::uint32_t mask(unsigned w) { return (std::uint32_t{1} << w) - 1; }

std::uint32_t odd_inverse(std::uint32_t a, unsigned w) {
  // Newton iteration for a⁻¹ mod 2^w.
  std::uint32_t x = a;
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x & mask(w);
}

void check_width(const ToyFdhParams& params) {
  if (params.width == 0 || params.width > 8) throw std::invalid_argument("toy FDH supports widths 1..8");
}

}  // namespace

std::vector<ToyKey> toy_keys(const ToyFdhParams& params) {
  check_width(params);
  std::vector<ToyKey> keys;
  for (std::uint32_t a = 1; a <= mask(params.width); a += 2) {
    for (std::uint32_t b = 0; b <= mask(params.width); ++b) keys.push_back({a, b});
  }
  return keys;
}

std::uint32_t toy_forward(const ToyKey& k, std::uint32_t y, unsigned width) {
  return (k.a * y + k.b) & mask(width);
}

std::uint32_t toy_inverse(const ToyKey& k, std::uint32_t y, unsigned width) {
  return (odd_inverse(k.a, width) * (y - k.b)) & mask(width);
}

BinaryString toy_sign(const ToyKey& k, const OracleTable& G, const BinaryString& m) {
  auto h = static_cast<std::uint32_t>(G(m).to_uint());
  return BinaryString::from_uint(toy_inverse(k, h, G.width()), G.width());
}

bool toy_verify(const ToyKey& k, const OracleTable& G, const BinaryString& m, const BinaryString& s) {
  if (s.size() != G.width()) return false;
  auto h = static_cast<std::uint32_t>(G(m).to_uint());
  return toy_forward(k, static_cast<std::uint32_t>(s.to_uint()), G.width()) == h;
}

bool toy_fdh_complete(const OracleTable& G) {
  for (const auto& k : toy_keys({G.width()})) {
    for (std::size_t j = 0; j < G.size(); ++j) {
      BinaryString m = nat_to_string(BigInt(static_cast<unsigned long>(j)));
      if (!toy_verify(k, G, m, toy_sign(k, G, m))) return false;
    }
  }
  return true;
}

ToyAdversary toy_adversary_from_name(const std::string& name) {
  if (name == "replay") return ToyAdversary::Replay;
  if (name == "guess") return ToyAdversary::Guess;
  if (name == "collision") return ToyAdversary::Collision;
  if (name == "inverter") return ToyAdversary::Inverter;
  throw std::invalid_argument("unknown toy adversary '" + name + "'");
}

std::string toy_adversary_name(ToyAdversary a) {
  switch (a) {
    case ToyAdversary::Replay:
      return "replay";
    case ToyAdversary::Guess:
      return "guess";
    case ToyAdversary::Collision:
      return "collision";
    case ToyAdversary::Inverter:
      return "inverter";
  }
  return "?";
}

Rational sigforge_toy(std::uint64_t, const OracleTable& G, const ToyFdhParams& params, ToyAdversary adversary) {
  check_width(params);
  if (G.width() != params.width) throw std::invalid_argument("oracle width differs from the scheme's");
  if (adversary != ToyAdversary::Replay && G.q() < 1) throw std::invalid_argument("adversary needs q >= 1");
  const unsigned w = params.width;
  const BinaryString zero = BinaryString::parse("0"), one = BinaryString::parse("1");
  auto keys = toy_keys(params);

  // Coins: w bits, used only by the guessing branches.
  std::uint64_t wins = 0, trials = 0;
  for (const auto& k : keys) {
    for (std::uint32_t coin = 0; coin <= mask(w); ++coin) {
      ++trials;
      std::set<BinaryString> Q;
      BinaryString m, s;
      switch (adversary) {
        case ToyAdversary::Replay:
          m = BinaryString();
          s = toy_sign(k, G, m);
          Q.insert(m);
          break;
        case ToyAdversary::Guess:
          m = zero;
          s = BinaryString::from_uint(coin, w);
          break;
        case ToyAdversary::Collision: {
          BinaryString s0 = toy_sign(k, G, zero);
          Q.insert(zero);
          m = one;
          s = G(zero) == G(one) ? s0 : BinaryString::from_uint(coin, w);
          break;
        }
        case ToyAdversary::Inverter:
          m = zero;
          s = BinaryString::from_uint(toy_inverse(k, static_cast<std::uint32_t>(G(zero).to_uint()), w), w);
          break;
      }
      if (!Q.count(m) && toy_verify(k, G, m, s)) ++wins;
    }
  }
  return make_rational(BigInt(static_cast<unsigned long>(wins)), BigInt(static_cast<unsigned long>(trials)));
}

ExperimentOracle toy_fdh_oracle(ToyAdversary adversary, const EllPolynomial& ell, unsigned q) {
  ExperimentOracle o;
  o.name = "toy_fdh/" + toy_adversary_name(adversary);
  o.evaluate = [adversary, ell](std::uint64_t n, const OracleTable& G) {
    return sigforge_toy(n, G, {static_cast<unsigned>(ell(n))}, adversary);
  };
  o.query_depth = [q](std::uint64_t) { return q; };
  return o;
}

}  // namespace randinst
