#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "randinst/diagonalizer.hpp"
#include "randinst/pipeline.hpp"
#include "randinst/registry.hpp"
#include "randinst/set_io.hpp"

using namespace randinst;
using oracle::R;

namespace {

BinaryCylinderSet bset(std::initializer_list<const char*> xs) {
  BinaryCylinderSet s;
  for (auto x : xs) s.insert(parse_binary_cell(x));
  return s;
}

BinaryString bs(const char* x) { return BinaryString::parse(x); }

std::string escape_prefix(const BinaryCylinderSet& s, std::size_t depth, EscapeMode mode = EscapeMode::Exact) {
  return escape(EnumeratedOpenSet<BinarySpace>::from_finite(s), depth, mode).prefix.to_string();
}

}  // namespace

TEST_CASE("exact conditional measures") {
  CHECK(conditional_measure_exact(bset({"0"}), bs("")) == R(1, 2));
  CHECK(conditional_measure_exact(bset({"0"}), bs("1")) == 0);
  CHECK(conditional_measure_exact(bset({"00", "01", "10"}), bs("1")) == R(1, 4));
}

TEST_CASE("approximate conditional measures") {
  auto empty = EnumeratedOpenSet<BinarySpace>::from_finite(BinaryCylinderSet());
  for (std::uint64_t k = 1; k <= 10; ++k) {
    auto v = conditional_measure_approx(empty, bs("01"), k);
    CHECK(abs(v.value) < pow2_inverse(k));
  }
  auto full = EnumeratedOpenSet<BinarySpace>::from_finite(bset({"λ"}));
  for (std::uint64_t k = 1; k <= 10; ++k) {
    CHECK(abs(conditional_measure_approx(full, bs(""), k).value - 1) < pow2_inverse(k));
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_binary_set(rng, 10, 8, 0.2);
    auto e = EnumeratedOpenSet<BinarySpace>::from_finite(s);
    ApproxEvaluator<BinarySpace> ev(e);
    auto t = BinaryString::from_uint(rng() % 8, 3);
    auto exact = conditional_measure_exact(s, t);
    for (std::uint64_t k = 1; k <= 20; ++k) REQUIRE(abs(ev.approx(t, k).value - exact) < pow2_inverse(k));
    // every stage's pieces over one depth sum to at most Λ(S)
    for (std::uint64_t m = 1; m <= e.stage_cap; ++m) {
      Rational sum = 0;
      for (std::uint64_t v = 0; v < 4; ++v) sum += conditional_measure(ev.stage_set(m), BinaryString::from_uint(v, 2));
      REQUIRE(sum <= binary_measure(s));
    }
  }
}

TEST_CASE("binary escape examples") {
  CHECK(escape_prefix(bset({"0"}), 1) == "1");
  CHECK(escape_prefix(bset({"00", "01", "10"}), 2) == "11");
  CHECK(escape_prefix(BinaryCylinderSet(), 3) == "000");
  CHECK(escape_prefix(bset({"00", "01", "10"}), 2, EscapeMode::Approx) == "11");
  CHECK_THROWS_AS(escape_prefix(bset({"0", "1"}), 2), EscapeError);
  CHECK_THROWS_AS(escape_prefix(bset({"0", "1"}), 2, EscapeMode::Approx), EscapeError);
}

TEST_CASE("family escape examples") {
  FamilyCylinderSet s;
  s.insert(FamilyPrefix({EncodingFunction::identity(1)}));
  auto tr = escape_family(EnumeratedOpenSet<FamilySpace>::from_finite(s), 1, EscapeMode::Exact);
  CHECK(tr.prefix[0] == EncodingFunction(1, {1, 0}));
  auto none = escape_family(EnumeratedOpenSet<FamilySpace>::from_finite(FamilyCylinderSet()), 3, EscapeMode::Exact);
  for (std::size_t k = 0; k < 3; ++k) CHECK(none.prefix[k] == EncodingFunction::identity(static_cast<unsigned>(k + 1)));
  CHECK_THROWS_AS(escape_family(EnumeratedOpenSet<FamilySpace>::from_finite(FamilyCylinderSet()), 4, EscapeMode::Exact),
                  std::invalid_argument);
}

TEST_CASE("escape invariants on random sets") {
  std::mt19937_64 rng(22);
  int done = 0;
  while (done < 100) {
    auto s = oracle::random_binary_set(rng, 8, 6, 0.2);
    if (binary_measure(s) >= 1) continue;
    ++done;
    auto e = EnumeratedOpenSet<BinarySpace>::from_finite(s);
    auto ex = escape(e, 7, EscapeMode::Exact);
    auto ap = escape(e, 7, EscapeMode::Approx);
    REQUIRE(ex.invariants_hold());
    REQUIRE(ap.invariants_hold());
    REQUIRE(ex.prefix == ap.prefix);
    REQUIRE(verify_escape(ex.prefix, s));
    for (const auto& c : s.cells()) REQUIRE_FALSE(oracle::cell_contains(c.coords(), ex.prefix.bits()));
    CHECK(format_transcript(escape(e, 7, EscapeMode::Exact)) == format_transcript(ex));
  }
}

TEST_CASE("verify_escape") {
  CHECK(verify_escape(bs("11"), bset({"00", "01", "10"})));
  CHECK_FALSE(verify_escape(bs("0"), bset({"0"})));
  CHECK_FALSE(verify_escape(bs("0"), bset({"00", "01"})));
}

TEST_CASE("transcript format") {
  auto tr = escape(EnumeratedOpenSet<BinarySpace>::from_finite(bset({"00", "01", "10"})), 2, EscapeMode::Exact);
  auto text = format_transcript(tr);
  CHECK(text.find("step\tcandidates") != std::string::npos);
  CHECK(text.find("prefix\t11\n") != std::string::npos);
  CHECK(tr.steps.size() == 2);
  CHECK(tr.steps[0].chosen_F == R(1, 4));
  CHECK(tr.steps[1].chosen_F == 0);
}

TEST_CASE("assembling test families") {
  auto g = EscapeSchedule::compressed();
  TestFamily<BinarySpace> empty = [](std::uint64_t, std::uint64_t, std::uint64_t) { return BinaryCylinderSet(); };
  auto a = assemble_open_set(empty, g, 5);
  CHECK(a.vacuous());
  CHECK(binary_measure(*a.open_set.finite) == 0);
  for (std::uint64_t k = 1; k <= 5; ++k) CHECK(a.open_set.measure_approx(k) == 0);

  TestFamily<BinarySpace> single = [](std::uint64_t i, std::uint64_t d, std::uint64_t n) {
    BinaryCylinderSet s;
    if (i == 1 && d == 2 && n == 2) s.insert(BinaryString::parse("0110"));
    return s;
  };
  auto b = assemble_open_set(single, g, 4);
  CHECK_FALSE(b.vacuous());
  CHECK(binary_measure(*b.open_set.finite) == R(1, 16));
  for (std::uint64_t k = 1; k <= 6; ++k) {
    CHECK(b.open_set.measure_approx(k) == R(1, 16));
    CHECK(binary_measure(b.open_set.stage(k)) == R(1, 16));
  }
  auto tr = escape(b.open_set, 4, EscapeMode::Approx);
  CHECK(tr.prefix.to_string() == "0000");

  TestFamily<BinarySpace> too_big = [](std::uint64_t, std::uint64_t, std::uint64_t) {
    BinaryCylinderSet s;
    s.insert(BinaryString::parse("0"));
    return s;
  };
  CHECK_THROWS_AS(assemble_open_set(too_big, g, 4), EscapeError);
}

TEST_CASE("generic-group test families") {
  auto none = build_ggm_testfamily(make_invalid_guess(), 2, 2);
  CHECK(none.set.empty());
  CHECK(none.measure == 0);
  auto all = build_ggm_testfamily(make_linear_search(2), 2, 2);
  CHECK(all.bad_count == 24);
  CHECK(all.measure == 1);
  CHECK(family_measure(all.set) == 1);
  auto c3 = build_ggm_testfamily(make_const_guess(0), 2, 3);
  CHECK(c3.bad_count == 40320);
  CHECK(c3.measure == 1);
  CHECK(build_ggm_testfamily(make_const_guess(0), 2, 1).set.empty());
  // fixed_point_guess succeeds on σ with 1/p per fixed point of σ on Z_p
  auto fp = build_ggm_testfamily(make_fixed_point_guess(), 1, 2);
  std::uint64_t bad = 0;
  auto sigma = EncodingFunction::identity(2);
  do {
    Rational s = 0;
    for (std::uint32_t p : {2u, 3u}) {
      std::uint32_t fixed = 0;
      for (std::uint32_t x = 0; x < p; ++x) fixed += sigma(x) == x;
      s += R(fixed, p) / 2;
    }
    bad += s > R(1, 2);
  } while (sigma.next());
  CHECK(fp.bad_count == bad);
}

TEST_CASE("pipeline runs") {
  auto compressed = run_ggm_pipeline(EscapeSchedule::compressed(), 3, EscapeMode::Exact);
  CHECK(compressed.ok());
  CHECK(compressed.verified);
  CHECK_FALSE(compressed.vacuous);
  CHECK(compressed.total_measure == R(11, 56));
  CHECK(compressed.transcript.prefix.to_string() == "0 1 | 0 1 3 2 | 0 1 3 2 4 5 6 7");
  auto approx = run_ggm_pipeline(EscapeSchedule::compressed(), 3, EscapeMode::Approx);
  CHECK(approx.transcript.prefix == compressed.transcript.prefix);
  auto paper = run_ggm_pipeline(EscapeSchedule::paper(Schedule::dlog(1)), 3, EscapeMode::Exact);
  CHECK(paper.vacuous);
  CHECK(paper.ok());
  CHECK(paper.total_measure == 0);
  CHECK(format_pipeline_report(compressed).find("prefix") != std::string::npos);
}
