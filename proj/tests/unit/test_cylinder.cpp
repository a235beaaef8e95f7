#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "randinst/set_io.hpp"

using namespace randinst;
using oracle::R;

namespace {

BinaryCylinderSet bset(std::initializer_list<const char*> xs) {
  BinaryCylinderSet s;
  for (auto x : xs) s.insert(parse_binary_cell(x));
  return s;
}

std::vector<std::string> formatted(const BinaryCylinderSet& s) {
  std::vector<std::string> out;
  for (const auto& c : s.cells()) out.push_back(format_cell(c));
  return out;
}

BinaryString bs(const char* x) { return BinaryString::parse(x); }

}  // namespace

TEST_CASE("prefix-free normalisation") {
  CHECK(formatted(normalize_prefix_free(bset({"0", "01"}))) == std::vector<std::string>{"0"});
  CHECK(formatted(normalize_prefix_free(bset({"λ", "1"}))) == std::vector<std::string>{"λ"});
  CHECK(formatted(normalize_prefix_free(bset({"11", "00", "10", "01"}))) ==
        std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(is_prefix_free(bset({"00", "01"})));
  CHECK_FALSE(is_prefix_free(bset({"0", "01"})));
}

TEST_CASE("binary measures") {
  CHECK(binary_measure(BinaryCylinderSet()) == 0);
  CHECK(binary_measure(bset({"λ"})) == 1);
  CHECK(binary_measure(bset({"0", "10"})) == R(3, 4));
  CHECK(binary_measure(bset({"0", "01", "0"})) == R(1, 2));
  CHECK(binary_measure(bset({"*1", "1*"})) == R(3, 4));
}

TEST_CASE("family cell volumes and measures") {
  CHECK(family_cell_volume(FamilyPrefix()) == 1);
  FamilyPrefix one({EncodingFunction::identity(1)});
  CHECK(family_cell_volume(one) == R(1, 2));
  FamilyPrefix two({EncodingFunction::identity(1), EncodingFunction(2, {3, 2, 1, 0})});
  CHECK(family_cell_volume(two) == R(1, 48));

  CHECK(family_measure(FamilyCylinderSet()) == 0);
  FamilyCylinderSet all;
  all.insert(FamilyPrefix());
  CHECK(family_measure(all) == 1);
  FamilyCylinderSet both;
  both.insert(FamilyPrefix({EncodingFunction(1, {0, 1})}));
  both.insert(FamilyPrefix({EncodingFunction(1, {1, 0})}));
  CHECK(family_measure(both) == 1);
}

TEST_CASE("intersection with a cell") {
  CHECK(formatted(intersect_with_cell(bset({"0"}), bs("00"))) == std::vector<std::string>{"00"});
  CHECK(formatted(intersect_with_cell(bset({"00", "11"}), bs("0"))) == std::vector<std::string>{"00"});
  CHECK(intersect_with_cell(bset({"11"}), bs("0")).empty());
  CHECK(binary_measure(intersect_with_cell(bset({"*1"}), bs("1"))) == R(1, 4));
}

TEST_CASE("measure axiom examples") {
  auto r = subadditivity_check<BinarySpace>({bset({"0"}), bset({"1"})});
  CHECK(r.union_measure == 1);
  CHECK(r.sum_of_measures == 1);
  CHECK(r.pairwise_disjoint);
  CHECK(r.additive_if_disjoint);

  r = subadditivity_check<BinarySpace>({bset({"0"}), bset({"01"})});
  CHECK(r.union_measure == R(1, 2));
  CHECK(r.sum_of_measures == R(3, 4));
  CHECK_FALSE(r.pairwise_disjoint);
  CHECK(r.subadditive);

  r = subadditivity_check<BinarySpace>({BinaryCylinderSet(), BinaryCylinderSet()});
  CHECK(r.union_measure == 0);
  CHECK(r.subadditive);
}

TEST_CASE("binary measure agrees with counting, with and without wildcards") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = oracle::random_binary_set(rng, 8, 7, trial % 2 ? 0.3 : 0.0);
    auto expect = oracle::binary_measure_by_counting(s, 7);
    REQUIRE(binary_measure(s) == expect);
    REQUIRE(measure(s) == expect);
    if (s.is_explicit()) REQUIRE(prefix_free_sum(normalize_prefix_free(s)) == expect);
  }
}

TEST_CASE("family measure agrees with counting") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_family_set(rng, 6, 2, trial % 2 ? 0.3 : 0.0);
    REQUIRE(family_measure(s) == oracle::family_measure_by_counting(s, 2));
  }
}

TEST_CASE("conditional measures split the parent exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_binary_set(rng, 6, 6, 0.25);
    // Σ over all t of one length of Λ(S ∩ I(t)) is Λ(S), summed literally
    for (unsigned len = 0; len <= 3; ++len) {
      Rational sum = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
        auto t = BinaryString::from_uint(v, len);
        auto F = conditional_measure(s, t);
        REQUIRE(F == binary_measure(intersect_with_cell(s, t)));
        sum += F;
      }
      REQUIRE(sum == binary_measure(s));
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    auto s = oracle::random_family_set(rng, 5, 2, 0.25);
    Rational sum = 0;
    for (const auto& pts : oracle::all_families(2)) {
      FamilyPrefix t(pts);
      auto F = conditional_measure(s, t);
      REQUIRE(F == family_measure(intersect_with_cell(s, t)));
      sum += F;
    }
    REQUIRE(sum == family_measure(s));
  }
}

TEST_CASE("child measures match per-child conditional measures") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_family_set(rng, 5, 2, 0.3);
    FamilyPrefix root;
    auto cm = child_measures(s, root);
    CHECK(cm.parent == family_measure(s));
    Rational total = 0;
    for (const auto& [sym, F] : cm.by_symbol) {
      CHECK(F == conditional_measure(s, FamilyPrefix({sym})));
      total += F;
    }
    total += cm.others * Rational(cm.others_count);
    CHECK(total == cm.parent);
  }
}

TEST_CASE("covers and containment") {
  auto s = bset({"0*1"});
  CHECK(covers(s, bs("011")));
  CHECK(covers(s, bs("0010")));
  CHECK_FALSE(covers(s, bs("01")));
  CHECK(contained_by_cells(bset({"001"}), s));
  CHECK_FALSE(contained_by_cells(bset({"00"}), s));
  CHECK(monotonicity_check(bset({"001"}), s));
}
