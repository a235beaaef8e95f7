// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../support/oracles.hpp"
#include "randinst/diagonalizer.hpp"
#include "randinst/experiments.hpp"
#include "randinst/pipeline.hpp"
#include "randinst/registry.hpp"
#include "randinst/rom.hpp"
#include "randinst/schedules.hpp"

using namespace randinst;
using oracle::R;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail << "exception: " << e.what() << "; ";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_seconds) {
    v.ok = false;
    v.detail << "runtime over the " << limit_seconds << " s limit; ";
  }
  if (!v.ok) ++failures;
  std::printf("%s criterion %d: %s (%s%.2f s)\n", v.ok ? "PASS" : "FAIL", id, title, v.detail.str().c_str(), secs);
  std::fflush(stdout);
}

// Prefix every cell of s with the fixed first bit b.
BinaryCylinderSet under(std::uint8_t b, const BinaryCylinderSet& s) {
  BinaryCylinderSet out;
  for (const auto& c : s.cells()) {
    std::vector<std::optional<std::uint8_t>> coords{b};
    coords.insert(coords.end(), c.coords().begin(), c.coords().end());
    out.insert(Cell<BinarySpace>(coords));
  }
  return out;
}

template <class Space>
void axioms(Verdict& v, const CylinderSet<Space>& a, const CylinderSet<Space>& b, const Rational& counted_a,
            const Rational& counted_union, bool disjoint_by_construction) {
  Rational la = cylinder_measure(a), lb = cylinder_measure(b);
  Rational lu = cylinder_measure(set_union<Space>({a, b}));
  v.require(la == counted_a, "measure differs from the counting oracle");
  v.require(lu == counted_union, "union measure differs from the counting oracle");
  v.require(cylinder_measure(normalize_prefix_free(a)) == la, "normalisation changed the measure");
  v.require(measure(a) == la, "splitting and prefix-free sum disagree");
  v.require(la <= lu && lb <= lu, "monotonicity");
  v.require(lu <= la + lb, "subadditivity");
  auto rep = subadditivity_check<Space>({a, b});
  v.require(rep.subadditive && rep.additive_if_disjoint, "subadditivity_check report");
  if (disjoint_by_construction) {
    v.require(rep.pairwise_disjoint, "disjoint pair not recognised");
    v.require(lu == la + lb, "disjoint additivity");
  }
}

FamilyCylinderSet family_under(const EncodingFunction& first, const FamilyCylinderSet& s) {
  FamilyCylinderSet out;
  for (const auto& c : s.cells()) {
    auto coords = c.coords();
    if (coords.empty()) coords.emplace_back(first);
    else coords[0] = first;
    out.insert(Cell<FamilySpace>(coords));
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "measure axioms on 1000 random binary and family cylinder sets", 60, [](Verdict& v) {
    std::mt19937_64 rng(1001);
    for (int t = 0; t < 500; ++t) {
      auto a = oracle::random_binary_set(rng, 8, 8, t % 2 ? 0.25 : 0.0);
      auto b = oracle::random_binary_set(rng, 8, 8, t % 3 ? 0.25 : 0.0);
      bool disjoint = t % 4 == 0;
      if (disjoint) {
        a = under(0, a);
        b = under(1, b);
      }
      auto both = set_union<BinarySpace>({a, b});
      axioms<BinarySpace>(v, a, b, oracle::binary_measure_by_counting(a, 9),
                          oracle::binary_measure_by_counting(both, 9), disjoint);
    }
    for (int t = 0; t < 500; ++t) {
      auto a = oracle::random_family_set(rng, 6, 2, t % 2 ? 0.25 : 0.0);
      auto b = oracle::random_family_set(rng, 6, 2, t % 3 ? 0.25 : 0.0);
      bool disjoint = t % 4 == 0;
      if (disjoint) {
        a = family_under(EncodingFunction(1, {0, 1}), a);
        b = family_under(EncodingFunction(1, {1, 0}), b);
      }
      auto both = set_union<FamilySpace>({a, b});
      axioms<FamilySpace>(v, a, b, oracle::family_measure_by_counting(a, 2),
                          oracle::family_measure_by_counting(both, 2), disjoint);
    }
  });

  criterion(2, "DLog exact values", 120, [](Verdict& v) {
    auto two = dlog_success_ggm(make_const_guess(0), 2).success;
    auto three = dlog_success_ggm(make_const_guess(0), 3).success;
    v.require(two == R(5, 12), "const_guess(0) at n=2 is " + to_fraction_string(two));
    v.require(three == R(6, 35), "const_guess(0) at n=3 is " + to_fraction_string(three));
    v.detail << "n=2 " << to_fraction_string(two) << ", n=3 " << to_fraction_string(three) << "; ";
    int cases = 0;
    for (std::uint64_t p : {2, 3, 5, 7}) {
      unsigned n = p < 4 ? 2 : 3;
      for (std::uint64_t m = 1; m <= 8; ++m) {
        auto r = dlog_fixed_modulus(make_linear_search(m), n, p);
        auto want = R(static_cast<long>(std::min(m + 1, p)), static_cast<long>(p));
        v.require(r.success == want, "linear_search(" + std::to_string(m) + ") at p=" + std::to_string(p));
        ++cases;
      }
    }
    v.detail << cases << " linear_search cases; ";
  });

  criterion(3, "Shoup audit for linear_search with C=4", 120, [](Verdict& v) {
    std::vector<ShoupGridPoint> grid;
    for (std::uint64_t p : {2, 3, 5, 7}) {
      unsigned n = p < 4 ? 2 : 3;
      for (std::uint64_t m = 1; m < p; ++m) {
        auto a = shoup_audit(make_linear_search(m), n, p, R(4));
        v.require(a.holds, "bound fails at m=" + std::to_string(m) + ", p=" + std::to_string(p));
        v.require(a.result.max_queries <= m, "more queries than m");
        // the analytic side, (m+1)/p ≤ 4m²/p
        v.require(R(static_cast<long>(m + 1), static_cast<long>(p)) <= R(static_cast<long>(4 * m * m), static_cast<long>(p)),
                  "analytic bound");
        grid.push_back({make_linear_search(m), n, p});
      }
    }
    auto c = minimal_shoup_constant(grid);
    v.require(c.constant <= 4, "minimal constant above 4");
    v.require(c.constant == 2, "minimal constant is " + to_fraction_string(c.constant));
    v.detail << grid.size() << " points, minimal constant " << to_fraction_string(c.constant) << "; ";
  });

  criterion(4, "schedule inequality chain for k in 1..3, d in 2..4, C=1", 60, [](Verdict& v) {
    for (std::uint64_t k = 1; k <= 3; ++k) {
      for (std::uint64_t d = 2; d <= 4; ++d) {
        auto r = schedule_chain_check(k, d, 1, 50);
        v.require(r.holds(), "library chain check");
        BigInt f = (2 * k + d + 1) * (2 * k + d + 1);
        v.require(r.start == f, "f(k,d)");
        for (unsigned long n = f.get_ui(); n <= f.get_ui() + 50; ++n) {
          // n^{2k+1} / 2^n ≤ n^{-d}  ⇔  n^{2k+1+d} ≤ 2^n
          v.require(pow(BigInt(n), 2 * k + 1 + d) <= pow2(n), "n=" + std::to_string(n));
        }
      }
    }
  });

  criterion(5, "ROM measure identity at ℓ≡1, q in {1,2}, n in {1,2}", 120, [](Verdict& v) {
    auto one = EllPolynomial::constant(1);
    std::mt19937_64 rng(5005);
    int sets = 0;
    for (unsigned q = 1; q <= 2; ++q) {
      unsigned slots = (1u << (q + 1)) - 1;
      for (std::uint64_t n = 1; n <= 2; ++n) {
        for (int t = 0; t < 50; ++t) {
          std::set<std::uint64_t> idx;
          std::uint64_t want = rng() % (std::min<std::uint64_t>(12, std::uint64_t{1} << slots) + 1);
          while (idx.size() < want) idx.insert(rng() % (std::uint64_t{1} << slots));
          std::vector<OracleTable> bad;
          for (auto i : idx) bad.push_back(OracleTable::from_index(n, q, 1, BigInt(static_cast<unsigned long>(i))));
          auto s = build_constraint_strings(n, q, one, bad);
          Rational expect = make_rational(BigInt(static_cast<unsigned long>(idx.size())), pow2(slots));
          v.require(binary_measure(s) == expect, "identity");
          if (q == 1) {
            auto L = static_cast<unsigned>(constraint_length(n, q, one));
            v.require(oracle::binary_measure_by_counting(s, L) == expect, "counting oracle");
          }
          ++sets;
        }
      }
    }
    v.detail << sets << " bad-table sets; ";
  });

  criterion(6, "escape correctness, exact/approx agreement", 300, [](Verdict& v) {
    std::mt19937_64 rng(6006);
    int binary = 0;
    while (binary < 500) {
      auto s = oracle::random_binary_set(rng, 10, 8, binary % 2 ? 0.2 : 0.0);
      if (binary_measure(s) >= 1) continue;
      ++binary;
      auto e = EnumeratedOpenSet<BinarySpace>::from_finite(s);
      auto ex = escape(e, 9, EscapeMode::Exact);
      auto ap = escape(e, 9, EscapeMode::Approx);
      v.require(ex.invariants_hold() && ap.invariants_hold(), "step invariant");
      v.require(ex.steps.size() == 9 && ap.steps.size() == 9, "transcript length");
      v.require(ex.prefix == ap.prefix, "exact and approx prefixes differ");
      v.require(verify_escape(ex.prefix, s), "verify_escape (binary)");
      for (const auto& c : s.cells()) v.require(!oracle::cell_contains(c.coords(), ex.prefix.bits()), "prefix covered");
      auto cell = intersect_with_cell(s, ex.prefix);
      v.require(oracle::binary_measure_by_counting(cell, 9) < pow2_inverse(9), "conditional measure by counting");
    }
    auto family_round = [&](unsigned count, unsigned max_len, std::size_t depth, bool approx) {
      unsigned done = 0;
      while (done < count) {
        auto s = oracle::random_family_set(rng, 6, max_len, done % 2 ? 0.3 : 0.0);
        if (family_measure(s) >= 1) continue;
        ++done;
        auto e = EnumeratedOpenSet<FamilySpace>::from_finite(s);
        auto ex = escape_family(e, depth, EscapeMode::Exact);
        v.require(ex.invariants_hold(), "family step invariant");
        v.require(verify_escape(ex.prefix, s), "verify_escape (family)");
        if (depth <= 2) {
          for (const auto& c : s.cells()) {
            v.require(!oracle::cell_contains(c.coords(), ex.prefix.entries()), "family prefix covered");
          }
        }
        if (approx) {
          auto ap = escape_family(e, depth, EscapeMode::Approx);
          v.require(ap.invariants_hold(), "family approx invariant");
          v.require(ap.prefix == ex.prefix, "family exact and approx prefixes differ");
        }
      }
    };
    family_round(100, 2, 2, true);
    family_round(10, 3, 3, true);
    v.detail << binary << " binary, 100 family at depth 2, 10 at depth 3; ";
  });

  criterion(7, "approximation tower within 2^-k", 300, [](Verdict& v) {
    std::mt19937_64 rng(7007);
    for (int t = 0; t < 200; ++t) {
      auto s = oracle::random_binary_set(rng, 12, 8, t % 2 ? 0.2 : 0.0);
      auto e = EnumeratedOpenSet<BinarySpace>::from_finite(s);
      ApproxEvaluator<BinarySpace> ev(e);
      auto tlen = static_cast<unsigned>(rng() % 5);
      auto t_prefix = BinaryString::from_uint(rng(), tlen);
      auto exact = oracle::binary_measure_by_counting(intersect_with_cell(s, t_prefix), 8);
      for (std::uint64_t k = 0; k <= 20; ++k) {
        v.require(abs(ev.approx(t_prefix, k).value - exact) < pow2_inverse(k), "approx vs exact F");
      }
    }
    // binary test families small enough to count: one or two strings of
    // length d·⌈log₂ n⌉ + 3, which keeps Λ(C_{i,d,n}) < 1/n^d
    TestFamily<BinarySpace> fam = [](std::uint64_t i, std::uint64_t d, std::uint64_t n) {
      unsigned lg = 0;
      while ((std::uint64_t{1} << lg) < n) ++lg;
      unsigned len = static_cast<unsigned>(d * lg + 3);
      std::mt19937_64 r(i * 1000003 + d * 1009 + n);
      BinaryCylinderSet s;
      for (std::uint64_t c = 0; c < 1 + (i + n) % 2; ++c) s.insert(BinaryString::from_uint(r(), len));
      return s;
    };
    int instances = 0;
    for (std::uint64_t H = 2; H <= 6; ++H) {
      auto a = assemble_open_set(fam, EscapeSchedule::compressed(), H);
      auto L = static_cast<unsigned>(std::max<std::size_t>(1, a.open_set.finite->max_length()));
      auto brute = oracle::binary_measure_by_counting(*a.open_set.finite, L);
      for (std::uint64_t k = 1; k <= 20; ++k) {
        v.require(abs(a.open_set.measure_approx(k) - brute) <= pow2_inverse(k), "assembled g(k), H=" + std::to_string(H));
      }
      ++instances;
    }
    // the generic-group assembly: parts fix coordinate 2 or 3 only, so the
    // union measure factors as 1 - (1 - a)(1 - b)
    auto registry = toy_registry();
    TestFamily<FamilySpace> ggm = [&](std::uint64_t i, std::uint64_t d, std::uint64_t n) {
      if (i == 0 || i > registry.size()) return FamilyCylinderSet();
      return build_ggm_testfamily(registry[i - 1], d, n).set;
    };
    auto a = assemble_open_set(ggm, EscapeSchedule::compressed(), 3);
    std::set<EncodingFunction> at2, at3;
    for (const auto& p : a.parts) {
      for (const auto& c : p.set.cells()) (p.n == 2 ? at2 : at3).insert(*c[p.n - 1]);
    }
    Rational pa = make_rational(BigInt(static_cast<unsigned long>(at2.size())), 24);
    Rational pb = make_rational(BigInt(static_cast<unsigned long>(at3.size())), 40320);
    Rational brute = 1 - (1 - pa) * (1 - pb);
    for (std::uint64_t k = 1; k <= 20; ++k) {
      v.require(abs(a.open_set.measure_approx(k) - brute) <= pow2_inverse(k), "generic-group g(k)");
    }
    v.detail << "200 F instances, " << instances + 1 << " assembled instances, Λ(C)=" << to_fraction_string(brute)
             << "; ";
  });

  criterion(8, "end-to-end toy pipeline", 300, [](Verdict& v) {
    auto r = run_ggm_pipeline(EscapeSchedule::compressed(), 3, EscapeMode::Exact);
    v.require(r.ok(), "compressed pipeline report");
    v.require(!r.vacuous && !r.checks.empty(), "compressed schedule materialised nothing");
    auto registry = toy_registry();
    for (const auto& c : r.checks) {
      auto part = build_ggm_testfamily(registry[c.i - 1], c.d, c.n);
      v.require(verify_escape(r.transcript.prefix, part.set), "escape from C_{i,d+1,n}");
      auto sigma_n = r.transcript.prefix[c.n - 1];
      auto success = dlog_success_for_sigma(registry[c.i - 1], static_cast<unsigned>(c.n), sigma_n);
      v.require(success <= make_rational(1, pow(BigInt(static_cast<unsigned long>(c.n)), c.d)), "success bound");
    }
    auto paper = run_ggm_pipeline(EscapeSchedule::paper(Schedule::dlog(1)), 3, EscapeMode::Exact);
    v.require(paper.ok(), "paper-schedule pipeline report");
    v.require(paper.vacuous, "paper schedule materialised a nonempty set below the horizon");
    v.detail << r.checks.size() << " materialised sets, prefix " << r.transcript.prefix.to_string()
             << "; paper schedule vacuous; ";
  });

  criterion(9, "tail, power-threshold and markov lemmas", 60, [](Verdict& v) {
    for (std::uint64_t d = 2; d <= 5; ++d) {
      for (std::uint64_t n = 1; n <= 100; ++n) v.require(tail_bound_check(n, d, 200).holds, "tail bound");
    }
    for (std::uint64_t d = 4; d <= 6; ++d) {
      v.require(power_threshold_check(d, 300), "power threshold");
      for (unsigned long n = d * d; n <= 300; ++n) v.require(pow2(n) >= pow(BigInt(n), d), "power by BigInt");
    }
    std::mt19937_64 rng(9009);
    for (int t = 0; t < 10000; ++t) {
      std::size_t N = 1 + rng() % 10;
      std::vector<Rational> vals(N);
      Rational sum = 0;
      for (auto& x : vals) {
        x = R(static_cast<long>(rng() % 16), 1 + static_cast<long>(rng() % 8));
        sum += x;
      }
      Rational eps = sum / Rational(static_cast<unsigned long>(N)) + R(static_cast<long>(rng() % 4), 8);
      Rational alpha = R(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4));
      auto r = markov_exceed_count(vals, eps, alpha);
      std::uint64_t count = 0;
      for (const auto& x : vals) count += x > alpha * eps;
      v.require(r.count == count, "markov count");
      v.require(Rational(static_cast<unsigned long>(count)) < Rational(static_cast<unsigned long>(N)) / alpha,
                "markov bound");
    }
  });

  return failures == 0 ? 0 : 1;
}
