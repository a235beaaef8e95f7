#include <doctest.h>

#include "../support/oracles.hpp"
#include "randinst/registry.hpp"
#include "randinst/vm.hpp"

using namespace randinst;

namespace {

std::vector<GenericProgram> builtins() {
  return {make_const_guess(0), make_const_guess(1, 3), make_invalid_guess(), make_random_guess(2),
          make_linear_search(1), make_linear_search(3), make_bsgs(4), make_bsgs(7),
          make_fixed_point_guess(), make_echo_input(1), make_const_string(BinaryString::parse("01"))};
}

}  // namespace

TEST_CASE("single runs") {
  auto sigma = EncodingFunction(3, {5, 2, 7, 0, 1, 3, 6, 4});
  auto out0 = run_generic(parse_program("outi 0\n"), 5, sigma, {1, 3}, {});
  CHECK(out0.output.kind == OutputKind::Int);
  CHECK(out0.output.value == 0);
  CHECK(out0.queries == 0);

  auto dbl = parse_program("load g0, 1\nadd g1, g0, g0\noutg g1\n");
  auto r = run_generic(dbl, 5, sigma, {1, 3}, {});
  CHECK(r.output.kind == OutputKind::Group);
  CHECK(r.output.code == sigma(1));
  CHECK(r.queries == 1);

  for (std::uint64_t m = 2; m <= 6; ++m) {
    auto ls = run_generic(make_linear_search(m), 5, sigma, {1, 2}, {});
    CHECK(ls.output.value == 2);
    CHECK(ls.queries <= m);
  }
}

TEST_CASE("parse errors and validation") {
  CHECK_THROWS_AS(parse_program("frob g0\nouti 0\n"), ProgramError);
  CHECK_THROWS_AS(parse_program("jmp nowhere\n"), ProgramError);
  CHECK_THROWS_AS(parse_program("load g0, 0\n"), ProgramError);            // falls off
  CHECK_THROWS_AS(parse_program("outg g3\n"), ProgramError);               // never written
  CHECK_THROWS_AS(parse_program("load g40, 0\noutg g40\n"), ProgramError);  // no such register
  CHECK_THROWS_AS(parse_program("coin a\nload g0, 0\na:\noutg g0\n"), ProgramError);  // defined on one path only
  CHECK_THROWS_AS(parse_program(".coins 41\nouti 0\n"), ProgramError);
  try {
    parse_program("outi 0\nbogus\n");
    FAIL("expected an error");
  } catch (const ProgramError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("format then parse is the identity") {
  for (const auto& p : builtins()) {
    auto back = parse_program(format_program(p));
    CHECK(back == p);
  }
  auto keyed = make_keyed_search(1, 2);
  CHECK(parse_program(format_program(keyed)) == keyed);
}

TEST_CASE("program specs") {
  CHECK(program_from_spec("const_guess:0").name == make_const_guess(0).name);
  CHECK(program_from_spec("linear_search:3") == make_linear_search(3));
  CHECK_THROWS_AS(program_from_spec("nope"), ProgramError);
  CHECK_FALSE(registry_names().empty());
}

TEST_CASE("vm errors") {
  auto sigma = EncodingFunction::identity(2);
  CHECK_THROWS_AS(run_generic(make_random_guess(2), 3, sigma, {1, 0}, {1}), VmError);
  auto spin = parse_program(".steps 50\nloop:\njmp loop\n");
  try {
    run_generic(spin, 3, sigma, {1, 0}, {});
    FAIL("expected a step bound error");
  } catch (const VmError& e) {
    CHECK(e.kind() == VmError::Kind::StepBound);
  }
}

TEST_CASE("oracle soundness, exhaustive for n <= 3") {
  auto add = parse_program("load g0, 1\nload g1, 2\nadd g2, g0, g1\noutg g2\n");
  auto inv = parse_program("load g0, 1\ninv g1, g0\noutg g1\n");
  for (unsigned n = 1; n <= 3; ++n) {
    std::vector<std::uint64_t> moduli;
    for (std::uint64_t N = 2; N <= (std::uint64_t{1} << n); ++N) moduli.push_back(N);
    auto sigma = EncodingFunction::identity(n);
    bool ok = true;
    do {
      for (auto N : moduli) {
        if (n == 3 && N != 5 && N != 8) continue;
        for (std::uint64_t x = 0; x < N; ++x) {
          auto ri = run_generic(inv, N, sigma, {1 % N, x}, {});
          ok = ok && ri.output.code == sigma(static_cast<std::uint32_t>((N - x) % N)) && ri.queries == 1;
          for (std::uint64_t y = 0; y < N; ++y) {
            auto ra = run_generic(add, N, sigma, {1 % N, x, y}, {});
            ok = ok && ra.output.code == sigma(static_cast<std::uint32_t>((x + y) % N)) && ra.queries == 1;
          }
        }
      }
    } while (ok && sigma.next());
    CHECK(ok);
  }
}

TEST_CASE("query counts stay within the declared bound on every path") {
  for (const auto& p : builtins()) {
    REQUIRE(p.declared_queries.has_value());
    for (unsigned n = 2; n <= 3; ++n) {
      std::uint64_t worst = 0;
      for (std::uint64_t N = 2; N < (std::uint64_t{1} << n); ++N) {
        for (int s = 0; s < 6; ++s) {
          auto sigma = EncodingFunction::unrank(n, BigInt(s * 7) % encoding_count(n));
          GroupContext ctx(N, sigma);
          for (std::uint64_t x = 0; x < N; ++x) {
            std::vector<std::uint64_t> in{1 % N, x, (x + 1) % N};
            explore_paths(Machine(p, ctx, in), p.coins, [&](const Machine& m) { worst = std::max(worst, m.queries()); });
          }
        }
      }
      CHECK_MESSAGE(worst <= *p.declared_queries, p.name);
    }
  }
}

TEST_CASE("baby-step giant-step covers b*G exponents") {
  for (std::uint64_t m = 1; m <= 10; ++m) {
    auto [b, G] = bsgs_parameters(m);
    CHECK((b - 1) + (G > 1 ? G : 0) <= m);
    auto prog = make_bsgs(m);
    auto sigma = EncodingFunction::identity(5);
    const std::uint64_t N = 31;
    std::uint64_t hits = 0;
    for (std::uint64_t x = 0; x < N; ++x) {
      auto r = run_generic(prog, N, sigma, {1, x}, {});
      hits += r.output.value == static_cast<std::int64_t>(x);
    }
    CHECK(hits == std::min<std::uint64_t>(b * G, N));
  }
}

TEST_CASE("the path explorer agrees with tape enumeration") {
  auto p = make_random_guess(3);
  auto sigma = EncodingFunction::identity(3);
  GroupContext ctx(7, sigma);
  std::map<std::int64_t, Rational> by_explorer, by_tapes;
  explore_paths(Machine(p, ctx, {1, 0}), p.coins, [&](const Machine& m) {
    by_explorer[m.output().value] += pow2_inverse(m.coins_used());
  });
  for (unsigned t = 0; t < 8; ++t) {
    std::vector<std::uint8_t> tape{static_cast<std::uint8_t>(t & 1), static_cast<std::uint8_t>((t >> 1) & 1),
                                   static_cast<std::uint8_t>((t >> 2) & 1)};
    auto o = oracle::naive_run(p, 7, sigma, {1, 0}, tape);
    by_tapes[o.value] += oracle::R(1, 8);
  }
  CHECK(by_explorer == by_tapes);
}
