#pragma once

// Finite binary strings and encoding functions, the two kinds of coordinate
// the cylinder-set machinery works over.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "randinst/rational.hpp"

namespace randinst {

/// A finite bit sequence. The empty string is λ.
class BinaryString {
 public:
  BinaryString() = default;
  explicit BinaryString(std::vector<std::uint8_t> bits);

  /// Accepts "0101", "" or "λ" for the empty string.
  static BinaryString parse(std::string_view text);
  /// The `width` low-order bits of `value`, most significant first.
  static BinaryString from_uint(std::uint64_t value, unsigned width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  void push_back(std::uint8_t bit);
  void append(const BinaryString& other);
  BinaryString prefix(std::size_t length) const;
  BinaryString substr(std::size_t offset, std::size_t length) const;
  bool is_prefix_of(const BinaryString& other) const;

  /// Big-endian value; throws std::overflow_error beyond 64 bits.
  std::uint64_t to_uint() const;

  /// "λ" for the empty string.
  std::string to_string() const;

  auto operator<=>(const BinaryString&) const = default;
  bool operator==(const BinaryString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// The string-natural identification λ↔0, 0↔1, 1↔2, 00↔3, ...: read "1x" in
/// binary and subtract one.
BigInt string_to_nat(const BinaryString& x);
BinaryString nat_to_string(const BigInt& k);

/// A bijection {0..2^n-1} -> {0,1}^n stored as an index table; the n-bit
/// string form is produced only on demand.
class EncodingFunction {
 public:
  static constexpr unsigned kMaxWidth = 20;

  EncodingFunction(unsigned width, std::vector<std::uint32_t> table);
  static EncodingFunction identity(unsigned width);
  /// The permutation of lexicographic rank `rank` (0-based).
  static EncodingFunction unrank(unsigned width, const BigInt& rank);

  unsigned width() const { return width_; }
  std::uint32_t domain_size() const { return static_cast<std::uint32_t>(table_.size()); }

  /// σ(x) as an integer in [0, 2^n).
  std::uint32_t operator()(std::uint32_t x) const { return table_[x]; }
  std::uint32_t inverse(std::uint32_t code) const { return inverse_[code]; }
  BinaryString encode(std::uint32_t x) const;
  const std::vector<std::uint32_t>& table() const { return table_; }

  /// Advances to the lexicographic successor; returns false (and wraps to the
  /// identity) after the last permutation.
  bool next();
  BigInt rank() const;

  std::string to_string() const;

  friend auto operator<=>(const EncodingFunction& a, const EncodingFunction& b) {
    return a.table_ <=> b.table_;
  }
  friend bool operator==(const EncodingFunction& a, const EncodingFunction& b) {
    return a.table_ == b.table_;
  }

 private:
  void rebuild_inverse();

  unsigned width_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

/// #Encf_n = (2^n)!.
const BigInt& encoding_count(unsigned width);

/// (σ_1,...,σ_m) with σ_k of width k.
class FamilyPrefix {
 public:
  FamilyPrefix() = default;
  explicit FamilyPrefix(std::vector<EncodingFunction> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const EncodingFunction& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<EncodingFunction>& entries() const { return entries_; }

  /// Throws std::invalid_argument unless entry.width() == size() + 1.
  void push_back(EncodingFunction entry);
  FamilyPrefix prefix(std::size_t length) const;
  bool is_prefix_of(const FamilyPrefix& other) const;

  std::string to_string() const;

  friend auto operator<=>(const FamilyPrefix&, const FamilyPrefix&) = default;
  friend bool operator==(const FamilyPrefix&, const FamilyPrefix&) = default;

 private:
  std::vector<EncodingFunction> entries_;
};

}  // namespace randinst
