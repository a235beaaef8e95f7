#include "randinst/schedules.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace randinst {

MarkovResult markov_exceed_count(const std::vector<Rational>& values, const Rational& epsilon,
                                 const Rational& alpha) {
  if (values.empty()) throw std::invalid_argument("markov check needs at least one value");
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  MarkovResult r;
  Rational threshold = alpha * epsilon;
  Rational sum = 0;
  for (const auto& v : values) {
    sum += v;
    if (v > threshold) ++r.count;
  }
  r.mean = sum / Rational(static_cast<unsigned long>(values.size()));
  r.bound = Rational(static_cast<unsigned long>(values.size())) / alpha;
  r.holds = r.mean > epsilon || Rational(static_cast<unsigned long>(r.count)) < r.bound;
  return r;
}

TailBoundResult tail_bound_check(std::uint64_t n, std::uint64_t d, std::uint64_t partial_terms) {
  if (d < 2) throw std::invalid_argument("tail bound needs d >= 2");
  if (n == 0) throw std::invalid_argument("tail bound needs n >= 1");
  TailBoundResult r;
  r.lower = 0;
  for (std::uint64_t k = n; k <= n + partial_terms; ++k) r.lower += make_rational(1, pow(BigInt(k), d));
  std::uint64_t last = n + partial_terms;
  r.remainder = make_rational(1, BigInt(d - 1) * pow(BigInt(last), d - 1));
  r.bound = make_rational(2, BigInt(n));
  r.holds = r.lower + r.remainder <= r.bound;
  return r;
}

bool power_threshold_check(std::uint64_t d, std::uint64_t n_max) {
  if (d < 4) throw std::invalid_argument("power threshold needs d >= 4");
  for (std::uint64_t n = d * d; n <= n_max; ++n) {
    if (pow2(n) < pow(BigInt(n), d)) return false;
  }
  return true;
}

std::uint64_t cantor_pair(std::uint64_t m, std::uint64_t n) {
  std::uint64_t s = m + n;
  return s * (s + 1) / 2 + n;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > k) --w;
  while ((w + 1) * (w + 2) / 2 <= k) ++w;
  std::uint64_t n = k - w * (w + 1) / 2;
  return {w - n, n};
}

std::pair<std::uint64_t, std::uint64_t> phi(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("phi is defined on positive integers");
  auto [a, b] = cantor_unpair(m - 1);
  return {a + 1, b + 2};
}

std::uint64_t phi_inverse(std::uint64_t i, std::uint64_t d) {
  if (i == 0 || d < 2) throw std::invalid_argument("phi_inverse needs i >= 1, d >= 2");
  return cantor_pair(i - 1, d - 2) + 1;
}

BigInt dlog_schedule(std::uint64_t k, std::uint64_t d, std::uint64_t C) {
  if (k == 0 || d == 0 || C == 0) throw std::invalid_argument("dlog_schedule arguments must be >= 1");
  BigInt a = BigInt(2 * k + d + 1);
  a *= a;
  BigInt b = BigInt(2) * BigInt(C);
  return a > b ? a : b;
}

Schedule Schedule::dlog(std::uint64_t C) {
  if (C == 0) throw std::invalid_argument("Shoup constant must be >= 1");
  Schedule s;
  s.kind_ = Kind::DlogPaper;
  s.param_ = C;
  return s;
}

Schedule Schedule::constant(std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("schedule values must be positive");
  Schedule s;
  s.kind_ = Kind::Constant;
  s.param_ = value;
  return s;
}

Schedule Schedule::table(std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> entries) {
  for (const auto& [key, v] : entries) {
    if (v <= 0) throw std::invalid_argument("schedule values must be positive");
  }
  Schedule s;
  s.kind_ = Kind::Table;
  s.table_ = std::move(entries);
  return s;
}

Schedule Schedule::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open schedule file " + path);
  std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::uint64_t k, d;
    std::string v;
    if (!(ss >> k)) continue;
    std::string extra;
    if (!(ss >> d >> v) || (ss >> extra)) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'k d N'");
    }
    BigInt value;
    if (value.set_str(v, 10) != 0) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": bad value '" + v + "'");
    }
    entries[{k, d}] = value;
  }
  return table(std::move(entries));
}

BigInt Schedule::operator()(std::uint64_t k, std::uint64_t d) const {
  switch (kind_) {
    case Kind::DlogPaper:
      return dlog_schedule(k, d, param_);
    case Kind::Constant:
      return BigInt(param_);
    case Kind::Table: {
      auto it = table_.find({k, d});
      if (it == table_.end()) {
        throw std::out_of_range("schedule table has no entry for (" + std::to_string(k) + "," +
                                std::to_string(d) + ")");
      }
      return it->second;
    }
  }
  return BigInt(1);
}

std::string Schedule::describe() const {
  switch (kind_) {
    case Kind::DlogPaper:
      return "dlog(C=" + std::to_string(param_) + ")";
    case Kind::Constant:
      return "constant(" + std::to_string(param_) + ")";
    case Kind::Table:
      return "table(" + std::to_string(table_.size()) + " entries)";
  }
  return "?";
}

BigInt escape_schedule(std::uint64_t m, const Schedule& f) {
  auto [i, d] = phi(m);
  return pow(f(i, 2 * d) + 1, m + 1);
}

EscapeSchedule EscapeSchedule::paper(Schedule f) {
  EscapeSchedule g;
  g.f_ = std::move(f);
  return g;
}

EscapeSchedule EscapeSchedule::compressed() { return EscapeSchedule(); }

BigInt EscapeSchedule::operator()(std::uint64_t m) const {
  if (m == 0) throw std::invalid_argument("escape schedule is defined on positive integers");
  if (f_) return escape_schedule(m, *f_);
  return BigInt(m + 1);
}

std::string EscapeSchedule::name() const {
  return f_ ? "paper[" + f_->describe() + "]" : "compressed";
}

ScheduleChainResult schedule_chain_check(std::uint64_t k, std::uint64_t d, std::uint64_t C,
                                         std::uint64_t span) {
  ScheduleChainResult r;
  r.start = dlog_schedule(k, d, C);
  std::uint64_t start = r.start.get_ui();
  for (std::uint64_t n = start; n <= start + span; ++n) {
    if (pow(BigInt(n), 2 * k + 1 + d) > pow2(n)) {
      r.failure = n;
      break;
    }
  }
  return r;
}

}  // namespace randinst
