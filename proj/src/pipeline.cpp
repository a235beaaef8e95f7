#include "randinst/pipeline.hpp"

#include <sstream>

#include "randinst/registry.hpp"

namespace randinst {

GgmTestFamily build_ggm_testfamily(const GenericProgram& prog, std::uint64_t d, std::uint64_t n,
                                   unsigned exhaustive_cap) {
  if (n == 0) throw std::invalid_argument("test families start at n = 1");
  if (n > exhaustive_cap) throw std::invalid_argument("n exceeds the exhaustive cap");
  GgmTestFamily fam;
  fam.measure = 0;
  if (n == 1) return fam;
  auto w = static_cast<unsigned>(n);
  Rational threshold = make_rational(1, pow(BigInt(static_cast<unsigned long>(n)), d));
  auto sigma = EncodingFunction::identity(w);
  do {
    if (dlog_success_for_sigma(prog, w, sigma) > threshold) {
      std::vector<std::optional<EncodingFunction>> coords(n);
      coords[n - 1] = sigma;
      fam.set.insert(Cell<FamilySpace>(std::move(coords)));
      ++fam.bad_count;
    }
  } while (sigma.next());
  fam.measure = make_rational(BigInt(static_cast<unsigned long>(fam.bad_count)), encoding_count(w));
  if (family_measure(fam.set) != fam.measure) throw std::logic_error("test-family measure mismatch");
  return fam;
}

std::vector<GenericProgram> toy_registry() {
  return {make_keyed_search(1, 2), make_keyed_search(2, 1), make_linear_search(1), make_const_guess(0),
          make_fixed_point_guess()};
}

bool PipelineReport::ok() const {
  if (!verified || !transcript.invariants_hold()) return false;
  for (const auto& c : checks) {
    if (!c.escaped || !c.bounded) return false;
  }
  return true;
}

PipelineReport run_ggm_pipeline(const EscapeSchedule& g, std::size_t depth, EscapeMode mode) {
  auto registry = std::make_shared<std::vector<GenericProgram>>(toy_registry());
  TestFamily<FamilySpace> family = [registry](std::uint64_t i, std::uint64_t d, std::uint64_t n) {
    if (i == 0 || i > registry->size()) return FamilyCylinderSet();
    return build_ggm_testfamily((*registry)[i - 1], d, n).set;
  };
  auto assembled = assemble_open_set<FamilySpace>(family, g, depth);

  PipelineReport r;
  r.schedule = g.name();
  r.horizon = depth;
  r.vacuous = assembled.vacuous();
  r.total_measure = cylinder_measure(*assembled.open_set.finite);
  r.transcript = escape_family(assembled.open_set, depth, mode);
  r.verified = verify_escape(r.transcript.prefix, *assembled.open_set.finite);
  for (const auto& p : assembled.parts) {
    PipelineCheck c{p.m, p.i, p.d, p.n, 0, p.measure, false, 0, false};
    c.bad_count = p.set.size();
    c.escaped = verify_escape(r.transcript.prefix, p.set);
    if (p.i <= registry->size() && p.n >= 2) {
      c.success = dlog_success_for_sigma((*registry)[p.i - 1], static_cast<unsigned>(p.n),
                                         r.transcript.prefix[p.n - 1]);
    }
    c.bounded = c.success <= make_rational(1, pow(BigInt(static_cast<unsigned long>(p.n)), p.d));
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::string format_pipeline_report(const PipelineReport& r) {
  std::ostringstream out;
  out << "schedule\t" << r.schedule << '\n';
  out << "horizon\t" << r.horizon << '\n';
  out << "constraint_sets\t" << r.checks.size() << '\n';
  out << "vacuous\t" << (r.vacuous ? "yes (every constraint set below the horizon is empty)" : "no") << '\n';
  out << "measure\t" << to_fraction_string(r.total_measure) << '\n';
  out << "m\ti\td\tn\tbad\tmeasure\tescaped\tsuccess\tbounded\n";
  for (const auto& c : r.checks) {
    out << c.m << '\t' << c.i << '\t' << c.d << '\t' << c.n << '\t' << c.bad_count << '\t'
        << to_fraction_string(c.measure) << '\t' << (c.escaped ? "yes" : "NO") << '\t' << to_fraction_string(c.success)
        << '\t' << (c.bounded ? "yes" : "NO") << '\n';
  }
  out << format_transcript(r.transcript);
  out << "verified\t" << (r.verified ? "yes" : "NO") << '\n';
  return out.str();
}

}  // namespace randinst
