#include "randinst/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "randinst/vm.hpp"

namespace randinst {

std::vector<std::uint64_t> n_bit_primes(unsigned n) {
  if (n < 2) throw std::invalid_argument("no " + std::to_string(n) + "-bit prime exists");
  if (n > 32) throw std::invalid_argument("n-bit primes are only listed for n <= 32");
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = std::uint64_t{1} << (n - 1); v < (std::uint64_t{1} << n); ++v) {
    if (is_prime(v)) out.push_back(v);
  }
  return out;
}

namespace {

// Hits for one (σ, N), weighted by 2^{coins - depth}; the denominator is
// N^{#exponents} · 2^{coins}.
struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t max_queries = 0;
};

Tally tally(const GenericProgram& prog, ExperimentKind kind, std::uint64_t N, const EncodingFunction& sigma) {
  GroupContext ctx(N, sigma);
  const unsigned D = prog.coins;
  Tally t;
  std::vector<std::uint64_t> inputs;
  auto run = [&](auto&& success) {
    explore_paths(Machine(prog, ctx, inputs), D, [&](const Machine& m) {
      t.max_queries = std::max(t.max_queries, m.queries());
      if (success(m.output())) t.hits += std::uint64_t{1} << (D - m.coins_used());
    });
  };
  if (kind == ExperimentKind::DLog) {
    for (std::uint64_t x = 0; x < N; ++x) {
      inputs = {1 % N, x};
      run([&](const Output& o) { return o.kind == OutputKind::Int && o.value == static_cast<std::int64_t>(x); });
    }
  } else {
    for (std::uint64_t x = 0; x < N; ++x) {
      for (std::uint64_t y = 0; y < N; ++y) {
        inputs = {1 % N, x, y};
        std::uint32_t target = ctx.encode((x * y) % N);
        run([&](const Output& o) {
          if (o.kind == OutputKind::Group) return o.code == target;
          if (o.kind == OutputKind::String) return o.bits == sigma.encode((x * y) % N);
          return false;
        });
      }
    }
  }
  return t;
}

BigInt denominator(const GenericProgram& prog, ExperimentKind kind, std::uint64_t N) {
  BigInt d = pow2(prog.coins) * BigInt(N);
  if (kind == ExperimentKind::CDH) d *= BigInt(N);
  return d;
}

std::vector<std::uint64_t> moduli_for(unsigned n, std::optional<std::uint64_t> fixed) {
  if (fixed) return {*fixed};
  return n_bit_primes(n);
}

SigmaOutcome outcome(const GenericProgram& prog, ExperimentKind kind, const std::vector<std::uint64_t>& moduli,
                     const EncodingFunction& sigma) {
  SigmaOutcome out;
  out.success = 0;
  for (auto N : moduli) {
    Tally t = tally(prog, kind, N, sigma);
    out.success += make_rational(BigInt(t.hits), denominator(prog, kind, N));
    out.max_queries = std::max(out.max_queries, t.max_queries);
  }
  out.success /= Rational(static_cast<unsigned long>(moduli.size()));
  return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the stream identical across standard libraries.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

EncodingFunction sample_sigma(unsigned width, std::mt19937_64& rng) {
  std::vector<std::uint32_t> table(std::size_t{1} << width);
  for (std::uint32_t i = 0; i < table.size(); ++i) table[i] = i;
  for (std::size_t i = table.size(); i > 1; --i) std::swap(table[i - 1], table[uniform_below(rng, i)]);
  return EncodingFunction(width, std::move(table));
}

ExperimentResult run_experiment(const GenericProgram& prog, ExperimentKind kind, unsigned n,
                                std::optional<std::uint64_t> fixed, const ExperimentOptions& opt) {
  if (n == 0 || n > EncodingFunction::kMaxWidth) throw std::invalid_argument("unsupported width n");
  auto moduli = moduli_for(n, fixed);
  ExperimentResult r;
  r.program = prog.name;
  r.kind = kind;
  r.n = n;
  r.modulus = fixed;
  r.mode = opt.mode;

  if (opt.mode == Mode::Sampled) {
    if (!opt.seed) throw std::invalid_argument("sampled mode needs a seed");
    if (opt.samples < 2) throw std::invalid_argument("sampled mode needs at least two samples");
    r.seed = opt.seed;
    std::mt19937_64 rng(*opt.seed);
    Rational sum = 0;
    double s1 = 0, s2 = 0;
    for (std::uint64_t k = 0; k < opt.samples; ++k) {
      auto sigma = sample_sigma(n, rng);
      auto o = outcome(prog, kind, moduli, sigma);
      sum += o.success;
      double v = o.success.get_d();
      s1 += v;
      s2 += v * v;
      r.max_queries = std::max(r.max_queries, o.max_queries);
    }
    double S = static_cast<double>(opt.samples);
    r.sigma_count = opt.samples;
    r.success = sum / Rational(BigInt(std::to_string(opt.samples)));
    r.estimate = s1 / S;
    double var = std::max(0.0, (s2 - S * r.estimate * r.estimate) / (S - 1));
    r.std_error = std::sqrt(var / S);
    return r;
  }

  if (n > opt.exhaustive_cap) {
    throw std::invalid_argument("exhaustive enumeration over Encf_" + std::to_string(n) + " exceeds cap " +
                                std::to_string(opt.exhaustive_cap));
  }
  const std::uint64_t total = encoding_count(n).get_ui();
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total / 64)));

  // Integer hit counts per modulus; every σ shares the same denominators.
  std::vector<std::vector<BigInt>> hits(threads, std::vector<BigInt>(moduli.size(), 0));
  std::vector<std::uint64_t> maxq(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned t) {
    try {
      std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
      if (lo == hi) return;
      auto sigma = EncodingFunction::unrank(n, BigInt(std::to_string(lo)));
      for (std::uint64_t k = lo; k < hi; ++k) {
        for (std::size_t i = 0; i < moduli.size(); ++i) {
          Tally tl = tally(prog, kind, moduli[i], sigma);
          hits[t][i] += BigInt(std::to_string(tl.hits));
          maxq[t] = std::max(maxq[t], tl.max_queries);
        }
        sigma.next();
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  r.success = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    BigInt h = 0;
    for (unsigned t = 0; t < threads; ++t) h += hits[t][i];
    r.success += make_rational(h, denominator(prog, kind, moduli[i]) * encoding_count(n));
  }
  r.success /= Rational(static_cast<unsigned long>(moduli.size()));
  r.max_queries = *std::max_element(maxq.begin(), maxq.end());
  r.sigma_count = total;
  r.estimate = r.success.get_d();
  return r;
}

}  // namespace

SigmaOutcome dlog_outcome_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma) {
  if (sigma.width() != n) throw std::invalid_argument("σ must have width n");
  return outcome(prog, ExperimentKind::DLog, n_bit_primes(n), sigma);
}

SigmaOutcome cdh_outcome_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma) {
  if (sigma.width() != n) throw std::invalid_argument("σ must have width n");
  return outcome(prog, ExperimentKind::CDH, n_bit_primes(n), sigma);
}

Rational dlog_success_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma) {
  return dlog_outcome_for_sigma(prog, n, sigma).success;
}

Rational cdh_success_for_sigma(const GenericProgram& prog, unsigned n, const EncodingFunction& sigma) {
  return cdh_outcome_for_sigma(prog, n, sigma).success;
}

SigmaOutcome fixed_modulus_outcome(const GenericProgram& prog, ExperimentKind kind, std::uint64_t N,
                                   const EncodingFunction& sigma) {
  return outcome(prog, kind, {N}, sigma);
}

ExperimentResult dlog_success_ggm(const GenericProgram& prog, unsigned n, const ExperimentOptions& opt) {
  return run_experiment(prog, ExperimentKind::DLog, n, std::nullopt, opt);
}

ExperimentResult cdh_success_ggm(const GenericProgram& prog, unsigned n, const ExperimentOptions& opt) {
  return run_experiment(prog, ExperimentKind::CDH, n, std::nullopt, opt);
}

ExperimentResult dlog_fixed_modulus(const GenericProgram& prog, unsigned n, std::uint64_t N,
                                    const ExperimentOptions& opt) {
  if (n == 0 || n > EncodingFunction::kMaxWidth || N < 2 || N > (std::uint64_t{1} << n) - 1) {
    throw std::invalid_argument("need 2 <= N <= 2^n - 1");
  }
  return run_experiment(prog, ExperimentKind::DLog, n, N, opt);
}

ShoupAudit shoup_audit(const GenericProgram& prog, unsigned n, std::uint64_t N, const Rational& C,
                       const ExperimentOptions& opt) {
  ShoupAudit a;
  a.result = dlog_fixed_modulus(prog, n, N, opt);
  a.p = distinct_prime_factors(N).back();
  a.C = C;
  BigInt m = BigInt(std::to_string(a.result.max_queries));
  a.bound = C * Rational(m * m) / Rational(BigInt(std::to_string(a.p)));
  a.holds = a.result.success <= a.bound;
  return a;
}

MinimalShoupConstant minimal_shoup_constant(const std::vector<ShoupGridPoint>& grid, const ExperimentOptions& opt) {
  if (grid.empty()) throw std::invalid_argument("empty audit grid");
  MinimalShoupConstant out;
  out.constant = 0;
  for (const auto& pt : grid) {
    auto a = shoup_audit(pt.prog, pt.n, pt.N, Rational(0), opt);
    if (a.result.max_queries == 0) {
      throw std::invalid_argument(pt.prog.name + " makes no oracle queries; the constant is unbounded");
    }
    BigInt m = BigInt(std::to_string(a.result.max_queries));
    Rational c = a.result.success * Rational(BigInt(std::to_string(a.p))) / Rational(m * m);
    out.constant = std::max(out.constant, c);
    out.audits.push_back(std::move(a));
  }
  for (auto& a : out.audits) {
    BigInt m = BigInt(std::to_string(a.result.max_queries));
    a.C = out.constant;
    a.bound = out.constant * Rational(m * m) / Rational(BigInt(std::to_string(a.p)));
    a.holds = a.result.success <= a.bound;
  }
  return out;
}

EncodingFunction random_encoding(unsigned width, std::uint64_t& state_seed) {
  std::mt19937_64 rng(state_seed);
  auto s = sample_sigma(width, rng);
  state_seed = rng();
  return s;
}

}  // namespace randinst
