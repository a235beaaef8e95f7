#include "randinst/rational.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace randinst {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow2_inverse(std::uint64_t k) { return make_rational(1, pow2(k)); }

BigInt pow2(std::uint64_t k) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, k);
  return v;
}

BigInt pow(const BigInt& base, std::uint64_t exponent) {
  BigInt v;
  mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exponent);
  return v;
}

const BigInt& factorial(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, BigInt> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  BigInt v;
  mpz_fac_ui(v.get_mpz_t(), n);
  return cache.emplace(n, std::move(v)).first->second;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt num = r.get_num();
  const BigInt& den = r.get_den();
  std::string out;
  if (num < 0) {
    out += "-";
    num = -num;
  }
  BigInt whole = num / den;
  BigInt rem = num % den;
  out += whole.get_str();
  if (digits <= 0) return out;
  out += ".";
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    BigInt digit = rem / den;
    rem %= den;
    out += digit.get_str();
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

std::string to_string(const BigInt& v) { return v.get_str(); }

}  // namespace randinst
