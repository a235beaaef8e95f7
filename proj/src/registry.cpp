#include "randinst/registry.hpp"

#include <sstream>

namespace randinst {

GenericProgram make_const_guess(std::int64_t c, std::uint64_t dummy_queries) {
  std::ostringstream s;
  s << ".name const_guess(" << c;
  if (dummy_queries) s << "," << dummy_queries;
  s << ")\n.queries " << dummy_queries << "\n  load g0, 0\n";
  for (std::uint64_t k = 0; k < dummy_queries; ++k) s << "  add g1, g0, g0\n";
  s << "  outi " << c << "\n";
  return parse_program(s.str());
}

GenericProgram make_invalid_guess() {
  return parse_program(".name invalid_guess\n.queries 0\n  outi N\n");
}

GenericProgram make_random_guess(unsigned bits) {
  if (bits > 30) throw ProgramError("random_guess supports at most 30 coins");
  std::ostringstream s;
  s << ".name random_guess(" << bits << ")\n.coins " << bits << "\n.queries 0\n  seti i0, 0\n";
  for (unsigned t = 0; t < bits; ++t) {
    s << "  coin one" << t << "\n  jmp next" << t << "\none" << t << ":\n  addi i0, " << (1ll << t)
      << "\nnext" << t << ":\n";
  }
  s << "  outi i0\n";
  return parse_program(s.str());
}

GenericProgram make_linear_search(std::uint64_t m) {
  std::ostringstream s;
  s << ".name linear_search(" << m << ")\n.queries " << m << "\n.steps " << 5 * m + 16 << "\n"
    << "  load g0, 0\n  load g1, 1\n  mov g2, g0\n  seti i0, 1\n"
    << "loop:\n  beq g2, g1, found\n  bgei i0, " << m + 1 << ", miss\n"
    << "  add g2, g2, g0\n  addi i0, 1\n  jmp loop\n"
    << "found:\n  modn i0\n  outi i0\nmiss:\n  outi -1\n";
  return parse_program(s.str());
}

std::pair<std::uint64_t, std::uint64_t> bsgs_parameters(std::uint64_t m) {
  std::uint64_t best_b = 1, best_g = 1;
  for (std::uint64_t b = 1; b <= 29 && b - 1 <= m; ++b) {
    std::uint64_t rest = m - (b - 1);
    std::uint64_t g = rest >= 2 ? rest : 1;
    if (b * g > best_b * best_g) {
      best_b = b;
      best_g = g;
    }
  }
  return {best_b, best_g};
}

GenericProgram make_bsgs(std::uint64_t m) {
  auto [b, G] = bsgs_parameters(m);
  std::uint64_t cost = (b - 1) + (G > 1 ? G : 0);
  std::ostringstream s;
  s << ".name bsgs(" << m << ")\n.queries " << cost << "\n.steps " << 4 * b * G + 4 * b + 16 << "\n"
    << "  load g0, 0\n  load g30, 1\n";
  for (std::uint64_t k = 1; k < b; ++k) s << "  add g" << k << ", g" << k - 1 << ", g0\n";
  if (G > 1) s << "  inv g31, g" << b - 1 << "\n";
  s << "  mov g29, g30\n";
  for (std::uint64_t j = 0; j < G; ++j) {
    for (std::uint64_t i = 1; i <= b; ++i) s << "  beq g29, g" << i - 1 << ", hit" << i + j * b << "\n";
    if (j + 1 < G) s << "  add g29, g29, g31\n";
  }
  s << "  outi -1\n";
  for (std::uint64_t v = 1; v <= b * G; ++v) s << "hit" << v << ":\n  seti i0, " << v << "\n  modn i0\n  outi i0\n";
  return parse_program(s.str());
}

GenericProgram make_fixed_point_guess() {
  return parse_program(".name fixed_point_guess\n.queries 0\n  load g0, 1\n  bits i0, g0\n  outi i0\n");
}

GenericProgram make_keyed_search(std::int64_t k1, std::int64_t k2) {
  std::ostringstream s;
  s << ".name keyed_search(" << k1 << "," << k2 << ")\n"
    << "  load g0, 0\n  bits i0, g0\n  beqi i0, " << k1 << ", key2\n  outi -1\n"
    << "key2:\n  add g1, g0, g0\n  bits i1, g1\n  beqi i1, " << k2 << ", search\n  outi -1\n"
    << "search:\n  load g2, 1\n  mov g3, g0\n  seti i2, 1\n"
    << "loop:\n  beq g3, g2, found\n  add g3, g3, g0\n  addi i2, 1\n  beq g3, g0, miss\n  jmp loop\n"
    << "found:\n  modn i2\n  outi i2\nmiss:\n  outi -1\n";
  return parse_program(s.str());
}

GenericProgram make_echo_input(unsigned i) {
  std::ostringstream s;
  s << ".name echo_input(" << i << ")\n.queries 0\n  load g0, " << i << "\n  outg g0\n";
  return parse_program(s.str());
}

GenericProgram make_const_string(const BinaryString& bits) {
  std::ostringstream s;
  s << ".name const_string(" << bits.to_string() << ")\n.queries 0\n  outs " << bits.to_string() << "\n";
  return parse_program(s.str());
}

namespace {

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

std::int64_t arg_int(const std::string& spec, const std::string& tok) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) throw ProgramError(spec + ": bad argument '" + tok + "'");
  return v;
}

std::uint64_t arg_nat(const std::string& spec, const std::string& tok) {
  auto v = arg_int(spec, tok);
  if (v < 0) throw ProgramError(spec + ": argument must be non-negative");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

GenericProgram program_from_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_program(spec.substr(5));
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  auto args = split_args(colon == std::string::npos ? "" : spec.substr(colon + 1));
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) throw ProgramError(spec + ": wrong number of arguments");
  };
  if (name == "const_guess") {
    want(1, 2);
    return make_const_guess(arg_int(spec, args[0]), args.size() > 1 ? arg_nat(spec, args[1]) : 0);
  }
  if (name == "invalid_guess") {
    want(0, 0);
    return make_invalid_guess();
  }
  if (name == "random_guess") {
    want(1, 1);
    return make_random_guess(static_cast<unsigned>(arg_nat(spec, args[0])));
  }
  if (name == "linear_search") {
    want(1, 1);
    return make_linear_search(arg_nat(spec, args[0]));
  }
  if (name == "bsgs") {
    want(1, 1);
    return make_bsgs(arg_nat(spec, args[0]));
  }
  if (name == "fixed_point_guess") {
    want(0, 0);
    return make_fixed_point_guess();
  }
  if (name == "keyed_search") {
    want(2, 2);
    return make_keyed_search(arg_int(spec, args[0]), arg_int(spec, args[1]));
  }
  if (name == "echo_input") {
    want(1, 1);
    return make_echo_input(static_cast<unsigned>(arg_nat(spec, args[0])));
  }
  if (name == "const_string") {
    want(1, 1);
    try {
      return make_const_string(BinaryString::parse(args[0]));
    } catch (const std::invalid_argument& e) {
      throw ProgramError(spec + ": " + e.what());
    }
  }
  throw ProgramError("unknown program '" + name + "'");
}

std::vector<std::string> registry_names() {
  return {"const_guess:c[,q]", "invalid_guess", "random_guess:b", "linear_search:m", "bsgs:m",
          "fixed_point_guess", "keyed_search:k1,k2", "echo_input:i", "const_string:bits"};
}

}  // namespace randinst
