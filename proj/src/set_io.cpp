#include "randinst/set_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace randinst {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_empty_token(const std::string& s) { return s == "λ" || s == "lambda"; }

template <class Space, class Parse>
CylinderSet<Space> read_any(std::istream& in, Parse parse) {
  CylinderSet<Space> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.insert(parse(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

}  // namespace

Cell<BinarySpace> parse_binary_cell(const std::string& raw) {
  std::string text = trim(raw);
  if (is_empty_token(text)) return Cell<BinarySpace>();
  std::vector<std::optional<std::uint8_t>> coords;
  for (char c : text) {
    if (c == '0' || c == '1') {
      coords.emplace_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c == '*') {
      coords.emplace_back(std::nullopt);
    } else {
      throw std::invalid_argument("bad character in binary string '" + text + "'");
    }
  }
  return Cell<BinarySpace>(std::move(coords));
}

Cell<FamilySpace> parse_family_cell(const std::string& raw) {
  std::string text = trim(raw);
  if (is_empty_token(text)) return Cell<FamilySpace>();
  std::vector<std::optional<EncodingFunction>> coords;
  std::stringstream ss(text);
  std::string entry;
  while (std::getline(ss, entry, '|')) {
    entry = trim(entry);
    unsigned width = static_cast<unsigned>(coords.size() + 1);
    if (entry == "*") {
      coords.emplace_back(std::nullopt);
      continue;
    }
    std::stringstream es(entry);
    std::vector<std::uint32_t> table;
    std::string tok;
    while (es >> tok) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("bad table entry '" + tok + "'");
      table.push_back(static_cast<std::uint32_t>(v));
    }
    if (width > EncodingFunction::kMaxWidth || table.size() != (std::size_t{1} << width)) {
      throw std::invalid_argument("entry " + std::to_string(width) + " must list " +
                                  std::to_string(1u << std::min(width, 20u)) + " values");
    }
    coords.emplace_back(EncodingFunction(width, std::move(table)));
  }
  return Cell<FamilySpace>(std::move(coords));
}

std::string format_cell(const Cell<BinarySpace>& c) {
  if (c.size() == 0) return "λ";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s.push_back(c[i] ? static_cast<char>('0' + *c[i]) : '*');
  return s;
}

std::string format_cell(const Cell<FamilySpace>& c) {
  if (c.size() == 0) return "λ";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " | ";
    s += c[i] ? c[i]->to_string() : "*";
  }
  return s;
}

BinaryCylinderSet read_binary_set(std::istream& in) {
  return read_any<BinarySpace>(in, [](const std::string& l) { return parse_binary_cell(l); });
}

FamilyCylinderSet read_family_set(std::istream& in) {
  return read_any<FamilySpace>(in, [](const std::string& l) { return parse_family_cell(l); });
}

BinaryCylinderSet load_binary_set(const std::string& path) {
  auto in = open_or_throw(path);
  return read_binary_set(in);
}

FamilyCylinderSet load_family_set(const std::string& path) {
  auto in = open_or_throw(path);
  return read_family_set(in);
}

void write_set(std::ostream& out, const BinaryCylinderSet& s) {
  for (const auto& c : s.cells()) out << format_cell(c) << '\n';
}

void write_set(std::ostream& out, const FamilyCylinderSet& s) {
  for (const auto& c : s.cells()) out << format_cell(c) << '\n';
}

}  // namespace randinst
