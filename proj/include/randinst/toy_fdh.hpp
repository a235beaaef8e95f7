#pragma once

// A toy full-domain-hash signature scheme over {0,1}^w, w = ℓ(n).
//
// Keys are affine permutations π(y) = a·y + b mod 2^w with a odd. Sign(m) =
// π⁻¹(G(m)) and Vrfy(m, s) = [π(s) = G(m)]. The public key reveals π, so the
// scheme has no one-wayness at all; it exists to drive the experiment harness.
// Messages are the strings of length ≤ q, i.e. the oracle's domain.

#include <cstdint>
#include <string>
#include <vector>

#include "randinst/rom.hpp"

namespace randinst {

struct ToyKey {
  std::uint32_t a;  // odd
  std::uint32_t b;
};

struct ToyFdhParams {
  unsigned width;  // w = ℓ(n), at most 8
};

std::vector<ToyKey> toy_keys(const ToyFdhParams& params);
std::uint32_t toy_forward(const ToyKey& k, std::uint32_t y, unsigned width);
std::uint32_t toy_inverse(const ToyKey& k, std::uint32_t y, unsigned width);

BinaryString toy_sign(const ToyKey& k, const OracleTable& G, const BinaryString& m);
bool toy_verify(const ToyKey& k, const OracleTable& G, const BinaryString& m, const BinaryString& s);

/// Vrfy(m, Sign(m)) = 1 for every key and every message in the domain of G.
bool toy_fdh_complete(const OracleTable& G);

/// replay: signs λ and outputs that pair (never fresh).
/// guess: outputs ("0", s) for a uniform s.
/// collision: signs "0"; if G(0) = G(1) outputs ("1", that signature), else guesses for "1".
/// inverter: uses π from pk to output ("0", π⁻¹(G(0))).
enum class ToyAdversary { Replay, Guess, Collision, Inverter };
ToyAdversary toy_adversary_from_name(const std::string& name);
std::string toy_adversary_name(ToyAdversary a);

/// Exact success probability, enumerating keys and coins. Throws
/// std::invalid_argument when G's width is not params.width or q is too small
/// for the adversary.
Rational sigforge_toy(std::uint64_t n, const OracleTable& G, const ToyFdhParams& params, ToyAdversary adversary);

/// The toy experiment as an oracle for build_rom_testfamily.
ExperimentOracle toy_fdh_oracle(ToyAdversary adversary, const EllPolynomial& ell, unsigned q);

}  // namespace randinst
