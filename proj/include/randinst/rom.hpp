#pragma once

// Random-oracle side: an ℓ-function H is flattened into one infinite bit
// sequence H(b(0))H(b(1))H(b(2))… where b is the inverse Cantor pairing, and
// the test sets C_{A,d,n} are cylinder sets constraining only the bits that
// hold the table G_n(x) = H(n, x) for |x| ≤ q.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "randinst/cylinder.hpp"

namespace randinst {

/// ℓ(n) = c0 + c1·n + c2·n² + …
class EllPolynomial {
 public:
  explicit EllPolynomial(std::vector<std::int64_t> coefficients, std::uint64_t checked_range = 64);
  static EllPolynomial constant(std::int64_t c) { return EllPolynomial({c}); }
  /// "c0,c1,…".
  static EllPolynomial parse(const std::string& text);

  /// Throws std::domain_error if the value is not positive.
  std::uint64_t operator()(std::uint64_t n) const;
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  std::string to_string() const;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// #{0,1}^{≤q} = 2^{q+1} - 1.
std::uint64_t strings_up_to(unsigned q);

/// Σ_{k < c(n,j)} ℓ(b₁(k)): the offset where the block H(n, j-th string) starts.
/// The block occupies [offset, offset + ℓ(n)).
std::uint64_t layout_position(std::uint64_t n, std::uint64_t j, const EllPolynomial& ell);

/// H(b(0))…H(b(depth-1)). Throws std::invalid_argument on a missing block or a
/// block whose length is not ℓ(b₁(k)).
BinaryString embed_ell_function(const std::map<std::pair<std::uint64_t, std::uint64_t>, BinaryString>& values,
                                std::uint64_t depth, const EllPolynomial& ell);
/// H(n, j) read back from a flattened prefix. Throws std::out_of_range when the
/// prefix is too short.
BinaryString extract_block(const BinaryString& flat, std::uint64_t n, std::uint64_t j, const EllPolynomial& ell);

/// G: {0,1}^{≤q} → {0,1}^w, indexed by the string order λ,0,1,00,…
class OracleTable {
 public:
  OracleTable(std::uint64_t n, unsigned q, unsigned width, std::vector<BinaryString> values);
  /// The table whose value j holds digit j (most significant first) of
  /// `index` written in base 2^width.
  static OracleTable from_index(std::uint64_t n, unsigned q, unsigned width, const BigInt& index);
  /// 2^{width·(2^{q+1}-1)}.
  static BigInt table_count(unsigned q, unsigned width);

  std::uint64_t n() const { return n_; }
  unsigned q() const { return q_; }
  unsigned width() const { return width_; }
  std::size_t size() const { return values_.size(); }
  const BinaryString& value(std::size_t j) const { return values_.at(j); }
  const BinaryString& operator()(const BinaryString& x) const;
  const std::vector<BinaryString>& values() const { return values_; }
  BigInt index() const;

  /// One "input -> output" pair per line.
  std::string to_text() const;
  static OracleTable parse_text(std::uint64_t n, unsigned q, const std::string& text);

  bool operator==(const OracleTable& o) const { return n_ == o.n_ && q_ == o.q_ && values_ == o.values_; }
  bool operator<(const OracleTable& o) const { return values_ < o.values_; }

 private:
  std::uint64_t n_;
  unsigned q_;
  unsigned width_;
  std::vector<BinaryString> values_;
};

/// Success probability of some fixed adversary against some fixed scheme when
/// the random oracle at parameter n is the table G.
struct ExperimentOracle {
  std::string name;
  std::function<Rational(std::uint64_t n, const OracleTable& G)> evaluate;
  std::function<unsigned(std::uint64_t n)> query_depth;
};

/// The flat sequence's G_n read back as a table.
OracleTable extract_table(const BinaryString& flat, std::uint64_t n, unsigned q, const EllPolynomial& ell);

/// Total length of every constraint string at (n, q): one past the last G-block.
std::uint64_t constraint_length(std::uint64_t n, unsigned q, const EllPolynomial& ell);

/// One cell per bad table: its G-blocks fixed, every other bit free. The cells
/// have one length, so the set is prefix-free. Throws std::invalid_argument when
/// a table's value width differs from ℓ(n).
BinaryCylinderSet build_constraint_strings(std::uint64_t n, unsigned q, const EllPolynomial& ell,
                                           const std::vector<OracleTable>& bad_tables);

/// Number of explicit strings the cells stand for.
BigInt explicit_string_count(const BinaryCylinderSet& s);
/// All explicit expansions; throws std::length_error beyond `cap` strings.
BinaryCylinderSet expand_cells(const BinaryCylinderSet& s, std::uint64_t cap);

/// bad_count · 2^{-ℓ(n)·#{0,1}^{≤q}}. Throws std::out_of_range when bad_count
/// exceeds the number of tables.
Rational rom_testset_measure(std::uint64_t n, unsigned q, const EllPolynomial& ell, const BigInt& bad_count);

struct RomTestFamily {
  BinaryCylinderSet set;
  std::vector<OracleTable> bad_tables;
  BigInt table_count;
  Rational measure;
};

/// C_{A,d,n}: constraint strings of the tables with success > 1/n^d. Throws
/// std::length_error when the table space exceeds `table_cap`.
RomTestFamily build_rom_testfamily(const ExperimentOracle& oracle, std::uint64_t d, std::uint64_t n,
                                   const EllPolynomial& ell, std::uint64_t table_cap = 1u << 16);

/// ⋃_{k=n}^{k_max} D_k, normalised.
BinaryCylinderSet solovay_to_ml(const std::function<BinaryCylinderSet(std::uint64_t)>& D, std::uint64_t n,
                                std::uint64_t k_max);

}  // namespace randinst
