#include "smallres/apsearch.hpp"

#include <cmath>
#include <limits>

#include "smallres/errors.hpp"
#include "smallres/numeric.hpp"
#include "smallres/parallel.hpp"

namespace smallres {

double bound_x(const OddPrimeContext& ctx, std::uint64_t k, double epsilon) {
  if (epsilon < 0) throw DomainError("epsilon must be >= 0");
  if (k < 2) throw DomainError("k must be >= 2");
  return ctx.bound_x((k == 2 ? 3.0 : 4.0) + epsilon);
}

double main_term_prediction(std::uint64_t k, std::uint64_t q, double x) {
  if (k < 1) throw DomainError("k must be >= 1");
  return x / (static_cast<double>(k) * static_cast<double>(euler_totient(q)));
}

UnweightedPrediction unweighted_prediction(const OddPrimeContext& ctx, std::uint64_t k,
                                           std::uint64_t q, double epsilon) {
  UnweightedPrediction out;
  out.x = bound_x(ctx, k, epsilon);
  out.main_term = main_term_prediction(k, q, out.x);
  out.loglog_convention = out.main_term / ctx.loglog_p();
  out.log_x_convention = out.main_term / std::log(out.x);
  return out;
}

SearchOutcome least_prime_with_verdict(Verdict target, std::uint64_t k, const ResidueClass& cls,
                                       const OddPrimeContext& ctx, std::uint64_t scan_limit,
                                       double epsilon) {
  const PowerResidueTest test(ctx, k);
  if (scan_limit < cls.q() + cls.a())
    throw DomainError("scan limit must be at least q + a");

  SearchOutcome out;
  out.target = target;
  out.k = k;
  out.cls = cls;
  out.bound_x = bound_x(ctx, k, epsilon);
  out.scan_limit = scan_limit;

  PrimeCursor primes;
  for (std::uint64_t n = primes.next(); n <= scan_limit; n = primes.next()) {
    if (!cls.contains(n) || ctx.divides(n)) continue;
    if (test.verdict(n) == target) {
      out.found_n = n;
      out.within_bound = static_cast<double>(n) <= out.bound_x;
      return out;
    }
  }
  return out;
}

CountReport weighted_count(Verdict target, std::uint64_t k, const ResidueClass& cls, double x,
                           const OddPrimeContext& ctx, double budget) {
  if (!(x >= 2)) throw DomainError("count range x must be >= 2");
  if (x > budget) throw ResourceError("count range exceeds the configured scan budget");
  const PowerResidueTest test(ctx, k);
  const auto limit = static_cast<std::uint64_t>(std::floor(x));

  CountReport out;
  out.target = target;
  out.k = k;
  out.cls = cls;
  out.x = x;

  CompensatedSum<double> weighted;
  for (std::uint64_t prime : primes_up_to(limit, std::numeric_limits<std::uint64_t>::max())) {
    const double weight = std::log(static_cast<double>(prime));
    std::uint64_t n = prime;
    for (unsigned j = 1;; ++j) {
      if (cls.contains(n) && !ctx.divides(n)) {
        const bool hit = test.verdict(n) == target;
        if (hit) weighted += weight;
        if (j == 1) {
          ++out.primes_in_class;
          if (hit) ++out.unweighted_count;
        }
      }
      if (n > limit / prime) break;
      n *= prime;
    }
  }
  out.weighted_count = weighted.value();
  out.main_term = main_term_prediction(k, cls.q(), x);
  out.error_term = out.weighted_count - out.main_term;
  out.density_estimate = out.primes_in_class == 0
                             ? 0.0
                             : static_cast<double>(out.unweighted_count) /
                                   static_cast<double>(out.primes_in_class);
  return out;
}

double error_shape_ratio(const CountReport& report, const OddPrimeContext& ctx) {
  const double lx = std::log(report.x);
  return std::abs(report.error_term) / (ctx.log_p() * lx * lx);
}

double resolve_x(const XSpec& spec, const OddPrimeContext& ctx, std::uint64_t k) {
  switch (spec.rule) {
    case XRule::Fixed:
      return spec.fixed_x;
    case XRule::BoundFormula:
      return bound_x(ctx, k, spec.epsilon);
    case XRule::WholeField:
      if (!ctx.fits_u64()) throw DomainError("whole-field range needs a 64-bit modulus");
      return static_cast<double>(ctx.p_u64() - 1);
  }
  return 0;
}

std::vector<std::uint64_t> stride_sample(const std::vector<std::uint64_t>& values,
                                         std::size_t count) {
  if (count == 0 || count >= values.size()) return values;
  if (count == 1) return {values.front()};
  std::vector<std::uint64_t> out;
  out.reserve(count);
  const double step = static_cast<double>(values.size() - 1) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(values[static_cast<std::size_t>(std::llround(step * static_cast<double>(i)))]);
  }
  return out;
}

DensitySweep density_sweep(Verdict target, std::uint64_t k, const ResidueClass& cls,
                           std::uint64_t p_lo, std::uint64_t p_hi, const XSpec& x_spec,
                           unsigned workers, std::size_t max_primes) {
  DensitySweep sweep;
  std::vector<std::uint64_t> conforming;
  for (std::uint64_t p : primes_between(std::max<std::uint64_t>(p_lo, 3), p_hi)) {
    if ((p - 1) % k == 0) {
      conforming.push_back(p);
    } else {
      sweep.skipped.push_back(p);
    }
  }
  conforming = stride_sample(conforming, max_primes);
  if (conforming.empty()) return sweep;

  // x never exceeds p-1 under the whole-field rule; other rules are resolved
  // per prime and checked against the shared prime list below.
  double x_max = 0;
  for (std::uint64_t p : conforming) {
    const auto ctx = OddPrimeContext::make(BigInt(static_cast<unsigned long>(p)), true);
    x_max = std::max(x_max, resolve_x(x_spec, ctx, k));
  }
  if (x_max > kDefaultCountBudget) throw ResourceError("density sweep range exceeds budget");
  const auto primes = primes_up_to(static_cast<std::uint64_t>(std::floor(x_max)));

  sweep.samples = parallel_map(conforming.size(), workers, [&](std::size_t i) {
    const std::uint64_t p = conforming[i];
    const auto ctx = OddPrimeContext::make(BigInt(static_cast<unsigned long>(p)), true);
    const PowerResidueTest test(ctx, k);
    DensitySample s;
    s.p = p;
    s.k = k;
    s.cls = cls;
    s.target = target;
    s.x = resolve_x(x_spec, ctx, k);
    const auto limit = static_cast<std::uint64_t>(std::floor(s.x));
    for (std::uint64_t ell : primes) {
      if (ell > limit) break;
      if (ell == p) continue;
      ++s.primes_total;
      if (!cls.contains(ell)) continue;
      ++s.primes_in_class;
      if (test.verdict(ell) == target) ++s.hits;
    }
    if (s.primes_in_class > 0)
      s.observed_fraction = static_cast<double>(s.hits) / static_cast<double>(s.primes_in_class);
    if (s.primes_total > 0) {
      s.correction_estimate = static_cast<double>(s.hits) / static_cast<double>(s.primes_total) *
                              static_cast<double>(k) *
                              static_cast<double>(euler_totient(cls.q()));
    }
    return s;
  });
  return sweep;
}

std::uint64_t max_regime_q(const OddPrimeContext& ctx, std::uint64_t k) {
  const double ll = ctx.loglog_p();
  const double limit = k == 2 ? ll : ll * ll;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(limit)));
}

std::vector<TheoremRow> theorem_sweep(const TheoremSweepConfig& cfg) {
  const auto primes =
      stride_sample(primes_between(std::max<std::uint64_t>(cfg.p_lo, 3), cfg.p_hi), cfg.sample);

  auto per_prime = [&](std::size_t i) {
    std::vector<TheoremRow> rows;
    const std::uint64_t p = primes[i];
    const auto ctx = OddPrimeContext::make(BigInt(static_cast<unsigned long>(p)), true);
    for (std::uint64_t k : cfg.ks) {
      if ((p - 1) % k != 0) continue;
      const std::uint64_t regime = max_regime_q(ctx, k);
      const std::uint64_t q_max = cfg.fixed_q.value_or(regime);
      for (std::uint64_t q = 1; q <= q_max; ++q) {
        for (const auto& cls : classes_mod(q)) {
          const auto outcome = least_prime_with_verdict(cfg.target, k, cls, ctx,
                                                        cfg.scan_limit, cfg.epsilon);
          TheoremRow row;
          row.p = p;
          row.k = k;
          row.cls = cls;
          row.found_n = outcome.found_n;
          row.bound = outcome.bound_x;
          row.within_bound = outcome.found_n.has_value() && outcome.within_bound;
          row.out_of_regime = q > regime;
          rows.push_back(row);
        }
      }
    }
    return rows;
  };

  std::vector<TheoremRow> out;
  for (auto& rows : parallel_map(primes.size(), cfg.workers, per_prime)) {
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace smallres
