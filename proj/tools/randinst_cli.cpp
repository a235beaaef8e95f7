// randinst: batch front end for the measure, generic-group, schedule and
// escape machinery. Exit status: 0 ok, 1 property violated, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "randinst/experiments.hpp"
#include "randinst/pipeline.hpp"
#include "randinst/registry.hpp"
#include "randinst/rom.hpp"
#include "randinst/schedules.hpp"
#include "randinst/set_io.hpp"
#include "randinst/toy_fdh.hpp"

using namespace randinst;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream out;
    if (format == "json") {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
        arr.push_back(obj);
      }
      out << arr.dump(2) << '\n';
      return out.str();
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << '\n';
    }
    return out.str();
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
}

std::vector<std::string> rational_cells(const Rational& r) {
  return {to_string(r.get_num()), to_string(r.get_den()), to_decimal_string(r, 12)};
}

EscapeSchedule parse_escape_schedule(const std::string& s, std::uint64_t C) {
  if (s == "paper") return EscapeSchedule::paper(Schedule::dlog(C));
  if (s == "compressed") return EscapeSchedule::compressed();
  if (s.rfind("file:", 0) == 0) return EscapeSchedule::paper(Schedule::load_table(s.substr(5)));
  throw UsageError("unknown schedule '" + s + "' (paper, compressed, file:PATH)");
}

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", c.out, "write output to PATH instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randinst: cylinder measures, generic-group experiments and constructive escapes"};
  app.require_subcommand(1);
  int status = 0;

  // measure
  Common measure_c;
  std::string set_path, kind = "binary";
  auto* measure = app.add_subcommand("measure", "exact measure of a cylinder-set file");
  measure->add_option("--set", set_path, "set file")->required();
  measure->add_option("--kind", kind, "binary or family")->check(CLI::IsMember({"binary", "family"}));
  add_common(measure, measure_c);
  measure->callback([&] {
    Table t{{"kind", "cells", "normalized_size", "measure", "measure_num", "measure_den", "measure_decimal"}, {}};
    Rational mu;
    std::size_t cells = 0, normalized = 0;
    if (kind == "binary") {
      auto s = load_binary_set(set_path);
      cells = s.size();
      normalized = normalize_prefix_free(s).size();
      mu = binary_measure(s);
    } else {
      auto s = load_family_set(set_path);
      cells = s.size();
      normalized = normalize_prefix_free(s).size();
      mu = family_measure(s);
    }
    auto rc = rational_cells(mu);
    t.rows.push_back({kind, std::to_string(cells), std::to_string(normalized), to_fraction_string(mu), rc[0], rc[1],
                      rc[2]});
    emit(t.render(measure_c.format), measure_c.out);
  });

  // dlog / cdh
  struct ExpArgs {
    Common c;
    std::string prog;
    unsigned n = 2;
    std::uint64_t N = 0;
    std::string mode = "exhaustive";
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 2000;
    unsigned cap = 3;
    unsigned threads = 0;
  };
  auto add_exp = [&](CLI::App* sub, ExpArgs& a, bool allow_N) {
    sub->add_option("--prog", a.prog, "name[:args] from the registry, or file:PATH")->required();
    sub->add_option("--n", a.n, "bit width n")->required();
    if (allow_N) sub->add_option("--N", a.N, "fixed group order instead of a random n-bit prime");
    sub->add_option("--mode", a.mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
    sub->add_option("--seed", a.seed, "seed, required for --mode sample");
    sub->add_option("--samples", a.samples, "number of sampled encodings");
    sub->add_option("--cap", a.cap, "largest n enumerated exhaustively");
    sub->add_option("--threads", a.threads, "worker threads (0: all cores)");
    add_common(sub, a.c);
  };
  auto options_of = [](const ExpArgs& a) {
    ExperimentOptions o;
    o.mode = a.mode == "sample" ? Mode::Sampled : Mode::Exhaustive;
    if (o.mode == Mode::Sampled && !a.seed) throw UsageError("--mode sample needs --seed");
    o.seed = a.seed;
    o.samples = a.samples;
    o.exhaustive_cap = a.cap;
    o.threads = a.threads;
    return o;
  };
  auto result_table = [](const ExperimentResult& r) {
    Table t{{"program", "n", "N", "success_num", "success_den", "success_decimal", "m"}, {}};
    bool sampled = r.mode == Mode::Sampled;
    if (sampled) {
      t.columns.push_back("std_error");
      t.columns.push_back("seed");
      t.columns.push_back("samples");
    }
    auto rc = rational_cells(r.success);
    std::vector<std::string> row{r.program, std::to_string(r.n), r.modulus ? std::to_string(*r.modulus) : "avg",
                                 rc[0], rc[1], rc[2], std::to_string(r.max_queries)};
    if (sampled) {
      std::ostringstream se;
      se.precision(6);
      se << r.std_error;
      row.push_back(se.str());
      row.push_back(std::to_string(*r.seed));
      row.push_back(std::to_string(r.sigma_count));
    }
    t.rows.push_back(row);
    return t;
  };

  ExpArgs dlog_a;
  auto* dlog = app.add_subcommand("dlog", "DLog success in the generic group model");
  add_exp(dlog, dlog_a, true);
  dlog->callback([&] {
    auto opt = options_of(dlog_a);
    auto prog = program_from_spec(dlog_a.prog);
    auto r = dlog_a.N ? dlog_fixed_modulus(prog, dlog_a.n, dlog_a.N, opt) : dlog_success_ggm(prog, dlog_a.n, opt);
    emit(result_table(r).render(dlog_a.c.format), dlog_a.c.out);
  });

  ExpArgs cdh_a;
  auto* cdh = app.add_subcommand("cdh", "CDH success in the generic group model");
  add_exp(cdh, cdh_a, false);
  cdh->callback([&] {
    auto opt = options_of(cdh_a);
    auto r = cdh_success_ggm(program_from_spec(cdh_a.prog), cdh_a.n, opt);
    emit(result_table(r).render(cdh_a.c.format), cdh_a.c.out);
  });

  // audit
  ExpArgs audit_a;
  std::string audit_C = "4";
  auto* audit = app.add_subcommand("audit", "check success <= C m^2 / p for a fixed group order N");
  add_exp(audit, audit_a, true);
  audit->add_option("--C", audit_C, "Shoup constant (rational)");
  audit->callback([&] {
    if (!audit_a.N) throw UsageError("audit needs --N");
    auto opt = options_of(audit_a);
    if (opt.mode == Mode::Sampled) throw UsageError("audit is exhaustive only");
    auto a = shoup_audit(program_from_spec(audit_a.prog), audit_a.n, audit_a.N, parse_rational(audit_C), opt);
    Table t = result_table(a.result);
    for (const char* c : {"p", "C", "bound_num", "bound_den", "bound_decimal", "holds"}) t.columns.push_back(c);
    auto bc = rational_cells(a.bound);
    for (const auto& v : std::vector<std::string>{std::to_string(a.p), to_fraction_string(a.C), bc[0], bc[1], bc[2],
                                                  a.holds ? "true" : "false"}) {
      t.rows[0].push_back(v);
    }
    emit(t.render(audit_a.c.format), audit_a.c.out);
    if (!a.holds) status = 1;
  });

  // diagonalize
  std::string diag_set, diag_kind = "binary", diag_mode = "exact", pipeline, diag_schedule = "paper", diag_out;
  std::size_t depth = 3;
  std::uint64_t diag_C = 1;
  auto* diag = app.add_subcommand("diagonalize", "escape from an open set of measure < 1");
  diag->add_option("--set", diag_set, "finite set file");
  diag->add_option("--kind", diag_kind, "binary or family")->check(CLI::IsMember({"binary", "family"}));
  diag->add_option("--depth", depth, "prefix length");
  diag->add_option("--mode", diag_mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
  diag->add_option("--pipeline", pipeline, "ggm: assemble the toy generic-group test families")
      ->check(CLI::IsMember({"ggm"}));
  diag->add_option("--schedule", diag_schedule, "paper, compressed or file:PATH");
  diag->add_option("--C", diag_C, "Shoup constant C inside f(k,d) for --schedule paper");
  diag->add_option("--out", diag_out, "write the transcript to PATH");
  diag->callback([&] {
    EscapeMode mode = diag_mode == "approx" ? EscapeMode::Approx : EscapeMode::Exact;
    if (!pipeline.empty()) {
      if (!diag_set.empty()) throw UsageError("--set and --pipeline are exclusive");
      auto r = run_ggm_pipeline(parse_escape_schedule(diag_schedule, diag_C), depth, mode);
      emit(format_pipeline_report(r), diag_out);
      if (!r.ok()) status = 1;
      return;
    }
    if (diag_set.empty()) throw UsageError("diagonalize needs --set or --pipeline");
    auto run = [&](auto set) {
      using Space = typename decltype(set)::space_type;
      Rational mu = cylinder_measure(set);
      if (mu >= 1) {
        std::cerr << "refusing: the set has measure " << to_fraction_string(mu) << " >= 1\n";
        status = 1;
        return;
      }
      auto open = EnumeratedOpenSet<Space>::from_finite(set);
      auto tr = escape(open, depth, mode);
      bool ok = verify_escape(tr.prefix, set) && tr.invariants_hold();
      emit(format_transcript(tr) + "verified\t" + (ok ? "yes" : "NO") + "\n", diag_out);
      if (!ok) status = 1;
    };
    if (diag_kind == "binary") {
      run(load_binary_set(diag_set));
    } else {
      if (depth > 3) throw UsageError("family escape depth is capped at 3");
      run(load_family_set(diag_set));
    }
  });

  // schedule
  Common sched_c;
  std::uint64_t sk = 1, sd = 2, sC = 1;
  std::vector<std::uint64_t> ms;
  std::string sched_file;
  auto* sched = app.add_subcommand("schedule", "f(k,d) and the escape schedule g(m)");
  sched->add_option("--k", sk, "adversary index k");
  sched->add_option("--d", sd, "exponent d");
  sched->add_option("--C", sC, "Shoup constant");
  sched->add_option("--m", ms, "escape indices m");
  sched->add_option("--table", sched_file, "f as a 'k d N' table file instead of the DLog rule");
  add_common(sched, sched_c);
  sched->callback([&] {
    Schedule f = sched_file.empty() ? Schedule::dlog(sC) : Schedule::load_table(sched_file);
    Table t{{"quantity", "args", "value"}, {}};
    t.rows.push_back({"f", "k=" + std::to_string(sk) + " d=" + std::to_string(sd), to_string(f(sk, sd))});
    for (auto m : ms) {
      auto [i, d] = phi(m);
      t.rows.push_back({"phi", "m=" + std::to_string(m), "(" + std::to_string(i) + " " + std::to_string(d) + ")"});
      t.rows.push_back({"g", "m=" + std::to_string(m), to_string(escape_schedule(m, f))});
    }
    emit(t.render(sched_c.format), sched_c.out);
  });

  // bounds
  Common bounds_c;
  std::uint64_t bn = 1, bd = 2, nmax = 100, terms = 200, bk = 1;
  auto* bounds = app.add_subcommand("bounds", "lemma checks");
  bounds->require_subcommand(1);
  auto* tail = bounds->add_subcommand("tail", "sum_{k>=n} 1/k^d <= 2/n");
  tail->add_option("--n", bn)->required();
  tail->add_option("--d", bd)->required();
  tail->add_option("--terms", terms, "exact partial-sum length");
  add_common(tail, bounds_c);
  tail->callback([&] {
    auto r = tail_bound_check(bn, bd, terms);
    Table t{{"check", "n", "d", "lower_plus_tail", "bound", "verdict"}, {}};
    t.rows.push_back({"tail", std::to_string(bn), std::to_string(bd), to_decimal_string(r.lower + r.remainder, 12),
                      to_fraction_string(r.bound), r.holds ? "holds" : "violated"});
    emit(t.render(bounds_c.format), bounds_c.out);
    if (!r.holds) status = 1;
  });
  auto* power = bounds->add_subcommand("power", "2^n >= n^d for n in [d^2, n_max]");
  power->add_option("--d", bd)->required();
  power->add_option("--n-max", nmax)->required();
  add_common(power, bounds_c);
  power->callback([&] {
    bool ok = power_threshold_check(bd, nmax);
    Table t{{"check", "d", "n_max", "verdict"}, {}};
    t.rows.push_back({"power", std::to_string(bd), std::to_string(nmax), ok ? "holds" : "violated"});
    emit(t.render(bounds_c.format), bounds_c.out);
    if (!ok) status = 1;
  });
  auto* chain = bounds->add_subcommand("chain", "n^{2k+1}/2^n <= 1/n^d on [f(k,d), f(k,d)+50]");
  chain->add_option("--k", bk)->required();
  chain->add_option("--d", bd)->required();
  chain->add_option("--C", sC);
  add_common(chain, bounds_c);
  chain->callback([&] {
    auto r = schedule_chain_check(bk, bd, sC);
    Table t{{"check", "k", "d", "C", "f", "verdict"}, {}};
    t.rows.push_back({"chain", std::to_string(bk), std::to_string(bd), std::to_string(sC), to_string(r.start),
                      r.holds() ? "holds" : "violated at n=" + std::to_string(*r.failure)});
    emit(t.render(bounds_c.format), bounds_c.out);
    if (!r.holds()) status = 1;
  });

  // romset
  Common rom_c;
  std::string ell_text = "1", adversary = "collision", rom_set_out;
  unsigned rq = 1;
  std::uint64_t rn = 2, rd = 2;
  auto* romset = app.add_subcommand("romset", "toy FDH test set C_{A,d,n}");
  romset->add_option("--ell", ell_text, "coefficients of l(n), c0,c1,...");
  romset->add_option("--q", rq, "query depth");
  romset->add_option("--n", rn, "parameter n");
  romset->add_option("--d", rd, "exponent d >= 2");
  romset->add_option("--adversary", adversary, "replay, guess, collision or inverter");
  romset->add_option("--set-out", rom_set_out, "write the constraint cells to PATH");
  add_common(romset, rom_c);
  romset->callback([&] {
    auto ell = EllPolynomial::parse(ell_text);
    auto fam = build_rom_testfamily(toy_fdh_oracle(toy_adversary_from_name(adversary), ell, rq), rd, rn, ell);
    Table t{{"adversary", "n", "d", "q", "tables", "bad", "measure_num", "measure_den", "measure_decimal"}, {}};
    auto rc = rational_cells(fam.measure);
    t.rows.push_back({adversary, std::to_string(rn), std::to_string(rd), std::to_string(rq),
                      to_string(fam.table_count), std::to_string(fam.bad_tables.size()), rc[0], rc[1], rc[2]});
    emit(t.render(rom_c.format), rom_c.out);
    if (!rom_set_out.empty()) {
      std::ostringstream s;
      write_set(s, fam.set);
      emit(s.str(), rom_set_out);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ProgramError& e) {
    std::cerr << "program error: " << e.what() << '\n';
    return 2;
  } catch (const EscapeError& e) {
    std::cerr << "escape refused: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
