#include "randinst/rom.hpp"

#include <sstream>
#include <stdexcept>

#include "randinst/schedules.hpp"

namespace randinst {

EllPolynomial::EllPolynomial(std::vector<std::int64_t> coefficients, std::uint64_t checked_range)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("ℓ needs at least one coefficient");
  for (std::uint64_t n = 0; n <= checked_range; ++n) (*this)(n);
}

EllPolynomial EllPolynomial::parse(const std::string& text) {
  std::vector<std::int64_t> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      c.push_back(std::stoll(tok, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty()) throw std::invalid_argument("bad ℓ coefficient '" + tok + "'");
  }
  return EllPolynomial(std::move(c));
}

std::uint64_t EllPolynomial::operator()(std::uint64_t n) const {
  BigInt v = 0, p = 1;
  for (auto c : coeffs_) {
    v += BigInt(static_cast<long>(c)) * p;
    p *= BigInt(static_cast<unsigned long>(n));
  }
  if (v <= 0) throw std::domain_error("ℓ(" + std::to_string(n) + ") is not positive");
  if (v > 1 << 20) throw std::domain_error("ℓ(" + std::to_string(n) + ") is too large");
  return v.get_ui();
}

std::string EllPolynomial::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coeffs_[i]);
  }
  return s;
}

std::uint64_t strings_up_to(unsigned q) {
  if (q > 40) throw std::invalid_argument("query depth too large");
  return (std::uint64_t{2} << q) - 1;
}

std::uint64_t layout_position(std::uint64_t n, std::uint64_t j, const EllPolynomial& ell) {
  std::uint64_t kj = cantor_pair(n, j);
  std::uint64_t pos = 0;
  for (std::uint64_t k = 0; k < kj; ++k) pos += ell(cantor_unpair(k).first);
  return pos;
}

BinaryString embed_ell_function(const std::map<std::pair<std::uint64_t, std::uint64_t>, BinaryString>& values,
                                std::uint64_t depth, const EllPolynomial& ell) {
  BinaryString out;
  for (std::uint64_t k = 0; k < depth; ++k) {
    auto key = cantor_unpair(k);
    auto it = values.find(key);
    if (it == values.end()) {
      throw std::invalid_argument("missing block (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ")");
    }
    if (it->second.size() != ell(key.first)) throw std::invalid_argument("block length differs from ℓ(n)");
    out.append(it->second);
  }
  return out;
}

BinaryString extract_block(const BinaryString& flat, std::uint64_t n, std::uint64_t j, const EllPolynomial& ell) {
  return flat.substr(layout_position(n, j, ell), ell(n));
}

OracleTable::OracleTable(std::uint64_t n, unsigned q, unsigned width, std::vector<BinaryString> values)
    : n_(n), q_(q), width_(width), values_(std::move(values)) {
  if (values_.size() != strings_up_to(q)) throw std::invalid_argument("table must be total on {0,1}^{<=q}");
  for (const auto& v : values_) {
    if (v.size() != width) throw std::invalid_argument("inconsistent block lengths in oracle table");
  }
}

BigInt OracleTable::table_count(unsigned q, unsigned width) { return pow2(std::uint64_t{width} * strings_up_to(q)); }

OracleTable OracleTable::from_index(std::uint64_t n, unsigned q, unsigned width, const BigInt& index) {
  std::uint64_t L1 = strings_up_to(q);
  if (index < 0 || index >= table_count(q, width)) throw std::out_of_range("table index out of range");
  std::vector<BinaryString> values(L1);
  BigInt rest = index;
  BigInt base = pow2(width);
  for (std::uint64_t j = L1; j-- > 0;) {
    BigInt digit = rest % base;
    rest /= base;
    values[j] = BinaryString::from_uint(digit.get_ui(), width);
  }
  return OracleTable(n, q, width, std::move(values));
}

BigInt OracleTable::index() const {
  BigInt v = 0;
  BigInt base = pow2(width_);
  for (const auto& x : values_) v = v * base + BigInt(static_cast<unsigned long>(x.to_uint()));
  return v;
}

const BinaryString& OracleTable::operator()(const BinaryString& x) const {
  BigInt j = string_to_nat(x);
  if (j >= values_.size()) throw std::out_of_range("query longer than q");
  return values_[j.get_ui()];
}

std::string OracleTable::to_text() const {
  std::string s;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    s += nat_to_string(BigInt(static_cast<unsigned long>(j))).to_string() + " -> " + values_[j].to_string() + "\n";
  }
  return s;
}

OracleTable OracleTable::parse_text(std::uint64_t n, unsigned q, const std::string& text) {
  std::vector<BinaryString> values(strings_up_to(q));
  std::vector<bool> seen(values.size(), false);
  std::istringstream in(text);
  std::string line;
  std::optional<unsigned> width;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string x, arrow, y;
    if (!(ls >> x)) continue;
    if (!(ls >> arrow >> y) || arrow != "->") throw std::invalid_argument("expected 'input -> output'");
    BigInt j = string_to_nat(BinaryString::parse(x));
    if (j >= values.size()) throw std::invalid_argument("input '" + x + "' longer than q");
    auto idx = j.get_ui();
    if (seen[idx]) throw std::invalid_argument("input '" + x + "' listed twice");
    seen[idx] = true;
    values[idx] = BinaryString::parse(y);
    width = static_cast<unsigned>(values[idx].size());
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("oracle table is not total");
  }
  return OracleTable(n, q, *width, std::move(values));
}

OracleTable extract_table(const BinaryString& flat, std::uint64_t n, unsigned q, const EllPolynomial& ell) {
  std::vector<BinaryString> values;
  for (std::uint64_t j = 0; j < strings_up_to(q); ++j) values.push_back(extract_block(flat, n, j, ell));
  return OracleTable(n, q, static_cast<unsigned>(ell(n)), std::move(values));
}

std::uint64_t constraint_length(std::uint64_t n, unsigned q, const EllPolynomial& ell) {
  return layout_position(n, strings_up_to(q) - 1, ell) + ell(n);
}

BinaryCylinderSet build_constraint_strings(std::uint64_t n, unsigned q, const EllPolynomial& ell,
                                           const std::vector<OracleTable>& bad_tables) {
  BinaryCylinderSet out;
  if (bad_tables.empty()) return out;
  const std::uint64_t L1 = strings_up_to(q);
  const std::uint64_t w = ell(n);
  const std::uint64_t total = constraint_length(n, q, ell);
  std::vector<std::uint64_t> offsets(L1);
  for (std::uint64_t j = 0; j < L1; ++j) offsets[j] = layout_position(n, j, ell);
  for (const auto& G : bad_tables) {
    if (G.width() != w || G.size() != L1) throw std::invalid_argument("inconsistent block lengths");
    std::vector<std::optional<std::uint8_t>> coords(total);
    for (std::uint64_t j = 0; j < L1; ++j) {
      for (std::uint64_t b = 0; b < w; ++b) coords[offsets[j] + b] = G.value(j)[b];
    }
    out.insert(Cell<BinarySpace>(std::move(coords)));
  }
  return out;
}

BigInt explicit_string_count(const BinaryCylinderSet& s) {
  BigInt total = 0;
  for (const auto& c : s.cells()) {
    std::uint64_t free = 0;
    for (std::size_t i = 0; i < c.size(); ++i) free += !c[i];
    total += pow2(free);
  }
  return total;
}

BinaryCylinderSet expand_cells(const BinaryCylinderSet& s, std::uint64_t cap) {
  if (explicit_string_count(s) > cap) throw std::length_error("expansion exceeds cap");
  BinaryCylinderSet out;
  for (const auto& c : s.cells()) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) free.push_back(i);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      std::vector<std::uint8_t> bits(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) bits[i] = c[i] ? *c[i] : 0;
      for (std::size_t f = 0; f < free.size(); ++f) bits[free[f]] = (mask >> f) & 1u;
      out.insert(BinaryString(std::move(bits)));
    }
  }
  return out;
}

Rational rom_testset_measure(std::uint64_t n, unsigned q, const EllPolynomial& ell, const BigInt& bad_count) {
  std::uint64_t constrained = ell(n) * strings_up_to(q);
  if (bad_count < 0 || bad_count > pow2(constrained)) throw std::out_of_range("bad_count out of range");
  return Rational(bad_count) * pow2_inverse(constrained);
}

RomTestFamily build_rom_testfamily(const ExperimentOracle& oracle, std::uint64_t d, std::uint64_t n,
                                   const EllPolynomial& ell, std::uint64_t table_cap) {
  if (d < 2) throw std::invalid_argument("test families need d >= 2");
  if (n == 0) throw std::invalid_argument("test families start at n = 1");
  unsigned q = oracle.query_depth(n);
  auto width = static_cast<unsigned>(ell(n));
  RomTestFamily fam;
  fam.table_count = OracleTable::table_count(q, width);
  if (fam.table_count > table_cap) throw std::length_error("oracle table space exceeds cap");
  Rational threshold = make_rational(1, pow(BigInt(static_cast<unsigned long>(n)), d));
  for (std::uint64_t idx = 0; idx < fam.table_count.get_ui(); ++idx) {
    auto G = OracleTable::from_index(n, q, width, BigInt(static_cast<unsigned long>(idx)));
    Rational s = oracle.evaluate(n, G);
    if (s < 0 || s > 1) throw std::domain_error(oracle.name + " returned a value outside [0,1]");
    if (s > threshold) fam.bad_tables.push_back(std::move(G));
  }
  fam.set = build_constraint_strings(n, q, ell, fam.bad_tables);
  fam.measure = rom_testset_measure(n, q, ell, BigInt(static_cast<unsigned long>(fam.bad_tables.size())));
  if (binary_measure(fam.set) != fam.measure) throw std::logic_error("constraint-set measure mismatch");
  return fam;
}

BinaryCylinderSet solovay_to_ml(const std::function<BinaryCylinderSet(std::uint64_t)>& D, std::uint64_t n,
                                std::uint64_t k_max) {
  BinaryCylinderSet u;
  for (std::uint64_t k = n; k <= k_max; ++k) u.append(D(k));
  return normalize_prefix_free(u);
}

}  // namespace randinst
