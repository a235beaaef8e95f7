#pragma once

// Line-oriented text format for cylinder sets.
//
// Binary sets: one string per line, '0'/'1' for fixed bits and '*' for a free
// bit; "λ" (or "lambda") is the empty string. Family sets: one prefix per
// line, entries separated by '|', each entry the space-separated table of a
// permutation or '*' for a free coordinate. '#' starts a comment.

#include <iosfwd>
#include <string>

#include "randinst/cylinder.hpp"

namespace randinst {

Cell<BinarySpace> parse_binary_cell(const std::string& text);
Cell<FamilySpace> parse_family_cell(const std::string& text);
std::string format_cell(const Cell<BinarySpace>& c);
std::string format_cell(const Cell<FamilySpace>& c);

/// Throws std::invalid_argument naming the offending line.
BinaryCylinderSet read_binary_set(std::istream& in);
FamilyCylinderSet read_family_set(std::istream& in);
BinaryCylinderSet load_binary_set(const std::string& path);
FamilyCylinderSet load_family_set(const std::string& path);

void write_set(std::ostream& out, const BinaryCylinderSet& s);
void write_set(std::ostream& out, const FamilyCylinderSet& s);

}  // namespace randinst
