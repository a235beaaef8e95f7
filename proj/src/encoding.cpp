#include "randinst/encoding.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace randinst {

BinaryString::BinaryString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("bit value out of range");
  }
}

BinaryString BinaryString::parse(std::string_view text) {
  if (text == "λ" || text == "lambda") return {};
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("not a binary string: '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BinaryString(std::move(bits));
}

BinaryString BinaryString::from_uint(std::uint64_t value, unsigned width) {
  std::vector<std::uint8_t> bits(width);
  for (unsigned i = 0; i < width; ++i) bits[width - 1 - i] = (value >> i) & 1u;
  return BinaryString(std::move(bits));
}

void BinaryString::push_back(std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("bit value out of range");
  bits_.push_back(bit);
}

void BinaryString::append(const BinaryString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BinaryString BinaryString::prefix(std::size_t length) const {
  return substr(0, length);
}

BinaryString BinaryString::substr(std::size_t offset, std::size_t length) const {
  if (offset + length > bits_.size()) throw std::out_of_range("substring past end of string");
  return BinaryString(std::vector<std::uint8_t>(bits_.begin() + offset,
                                                bits_.begin() + offset + length));
}

bool BinaryString::is_prefix_of(const BinaryString& other) const {
  return size() <= other.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::uint64_t BinaryString::to_uint() const {
  if (bits_.size() > 64) throw std::overflow_error("binary string wider than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BinaryString::to_string() const {
  if (bits_.empty()) return "λ";
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BigInt string_to_nat(const BinaryString& x) {
  BigInt v = 1;
  for (std::size_t i = 0; i < x.size(); ++i) v = v * 2 + x[i];
  return v - 1;
}

BinaryString nat_to_string(const BigInt& k) {
  if (k < 0) throw std::invalid_argument("negative natural");
  BigInt v = k + 1;
  std::size_t len = mpz_sizeinbase(v.get_mpz_t(), 2) - 1;
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) {
    bits[len - 1 - i] = static_cast<std::uint8_t>(mpz_tstbit(v.get_mpz_t(), i));
  }
  return BinaryString(std::move(bits));
}

EncodingFunction::EncodingFunction(unsigned width, std::vector<std::uint32_t> table)
    : width_(width), table_(std::move(table)) {
  if (width == 0 || width > kMaxWidth) throw std::invalid_argument("encoding width out of range");
  if (table_.size() != (std::size_t{1} << width)) {
    throw std::invalid_argument("encoding table must have 2^n entries");
  }
  rebuild_inverse();
}

void EncodingFunction::rebuild_inverse() {
  inverse_.assign(table_.size(), 0);
  std::vector<bool> seen(table_.size(), false);
  for (std::uint32_t x = 0; x < table_.size(); ++x) {
    auto code = table_[x];
    if (code >= table_.size() || seen[code]) {
      throw std::invalid_argument("encoding table is not a bijection");
    }
    seen[code] = true;
    inverse_[code] = x;
  }
}

EncodingFunction EncodingFunction::identity(unsigned width) {
  if (width == 0 || width > kMaxWidth) throw std::invalid_argument("encoding width out of range");
  std::vector<std::uint32_t> t(std::size_t{1} << width);
  std::iota(t.begin(), t.end(), 0u);
  return EncodingFunction(width, std::move(t));
}

EncodingFunction EncodingFunction::unrank(unsigned width, const BigInt& rank) {
  if (width == 0 || width > kMaxWidth) throw std::invalid_argument("encoding width out of range");
  const std::size_t size = std::size_t{1} << width;
  if (rank < 0 || rank >= factorial(static_cast<unsigned>(size))) {
    throw std::out_of_range("permutation rank out of range");
  }
  std::vector<std::uint32_t> pool(size);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<std::uint32_t> t;
  t.reserve(size);
  BigInt r = rank;
  for (std::size_t i = 0; i < size; ++i) {
    const BigInt& block = factorial(static_cast<unsigned>(size - 1 - i));
    BigInt idx = r / block;
    r %= block;
    auto j = idx.get_ui();
    t.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return EncodingFunction(width, std::move(t));
}

BinaryString EncodingFunction::encode(std::uint32_t x) const {
  return BinaryString::from_uint(table_.at(x), width_);
}

bool EncodingFunction::next() {
  bool more = std::next_permutation(table_.begin(), table_.end());
  rebuild_inverse();
  return more;
}

BigInt EncodingFunction::rank() const {
  const std::size_t size = table_.size();
  BigInt r = 0;
  for (std::size_t i = 0; i < size; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < size; ++j) {
      if (table_[j] < table_[i]) ++smaller;
    }
    r += factorial(static_cast<unsigned>(size - 1 - i)) * smaller;
  }
  return r;
}

std::string EncodingFunction::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(table_[i]);
  }
  return s;
}

const BigInt& encoding_count(unsigned width) {
  if (width == 0 || width > EncodingFunction::kMaxWidth) {
    throw std::invalid_argument("encoding width out of range");
  }
  return factorial(1u << width);
}

FamilyPrefix::FamilyPrefix(std::vector<EncodingFunction> entries) {
  for (auto& e : entries) push_back(std::move(e));
}

void FamilyPrefix::push_back(EncodingFunction entry) {
  if (entry.width() != entries_.size() + 1) {
    throw std::invalid_argument("family prefix entry " + std::to_string(entries_.size() + 1) +
                                " must have width " + std::to_string(entries_.size() + 1));
  }
  entries_.push_back(std::move(entry));
}

FamilyPrefix FamilyPrefix::prefix(std::size_t length) const {
  if (length > entries_.size()) throw std::out_of_range("prefix longer than family");
  return FamilyPrefix(std::vector<EncodingFunction>(entries_.begin(),
                                                    entries_.begin() + static_cast<std::ptrdiff_t>(length)));
}

bool FamilyPrefix::is_prefix_of(const FamilyPrefix& other) const {
  return size() <= other.size() && std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
}

std::string FamilyPrefix::to_string() const {
  if (entries_.empty()) return "λ";
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += " | ";
    s += entries_[i].to_string();
  }
  return s;
}

}  // namespace randinst
