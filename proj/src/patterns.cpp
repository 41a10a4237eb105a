#include "smallres/patterns.hpp"

#include <algorithm>
#include <cmath>

#include "smallres/errors.hpp"
#include "smallres/numeric.hpp"

namespace smallres {

namespace {

constexpr std::uint64_t kMaxCensusPrime = 10'000'000;

/// Lambda(n) for n in [0, x], from the prime list.
std::vector<double> mangoldt_table(std::uint64_t x) {
  std::vector<double> lambda(x + 1, 0.0);
  for (std::uint64_t r : primes_up_to(x)) {
    const double w = std::log(static_cast<double>(r));
    for (std::uint64_t n = r;; n *= r) {
      lambda[n] = w;
      if (n > x / r) break;
    }
  }
  return lambda;
}

std::vector<char> prime_flags(std::uint64_t x) {
  std::vector<char> flags(x + 1, 0);
  for (std::uint64_t r : primes_up_to(x)) flags[r] = 1;
  return flags;
}

PairPattern classify(bool first_residue, bool second_residue) {
  if (first_residue) return second_residue ? PairPattern::RR : PairPattern::RN;
  return second_residue ? PairPattern::NR : PairPattern::NN;
}

double mean_of(const std::map<std::uint64_t, std::uint64_t>& hist) {
  double total = 0;
  std::uint64_t count = 0;
  for (const auto& [gap, n] : hist) {
    total += static_cast<double>(gap) * static_cast<double>(n);
    count += n;
  }
  return total / static_cast<double>(count);
}

}  // namespace

const char* to_string(PairPattern p) {
  switch (p) {
    case PairPattern::RR: return "RR";
    case PairPattern::RN: return "RN";
    case PairPattern::NR: return "NR";
    case PairPattern::NN: return "NN";
  }
  return "?";
}

std::string refined_label(PairPattern base, bool first_prime, bool second_prime) {
  const std::string name = to_string(base);
  std::string out;
  out += name[0];
  out += first_prime ? 'p' : 'c';
  out += name[1];
  out += second_prime ? 'p' : 'c';
  return out;
}

GapStatistics gap_statistics(const QuadraticTable& chi, Verdict which) {
  const std::uint64_t p = chi.p();
  const int want = which == Verdict::Residue ? 1 : -1;
  GapStatistics g;
  for (std::uint64_t r = 1; r + 1 <= p - 1; ++r) {
    if (chi.chi(r) == want && chi.chi(r + 1) == want) g.starts.push_back(r);
  }
  if (g.starts.empty()) return g;

  // KS distance against uniform on [1, p-1].
  const double n = static_cast<double>(g.starts.size());
  const double span = static_cast<double>(p - 2);
  double ks = 0;
  for (std::size_t i = 0; i < g.starts.size(); ++i) {
    const double f = (static_cast<double>(g.starts[i]) - 1.0) / span;
    ks = std::max({ks, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  g.ks_statistic = ks;

  if (g.starts.size() < 2) return g;
  std::uint64_t run_end = g.starts[0];
  std::uint64_t max_gap = 0;
  for (std::size_t i = 1; i < g.starts.size(); ++i) {
    const std::uint64_t gap = g.starts[i] - g.starts[i - 1] - 1;
    ++g.raw_histogram[gap];
    max_gap = std::max(max_gap, gap);
    if (gap == 0) {
      run_end = g.starts[i];
    } else {
      ++g.run_histogram[g.starts[i] - run_end - 1];
      run_end = g.starts[i];
    }
  }
  g.raw_mean = mean_of(g.raw_histogram);
  if (!g.run_histogram.empty()) g.run_mean = mean_of(g.run_histogram);
  g.max_gap = max_gap;
  return g;
}

GapStatistics gap_statistics(std::uint64_t p, Verdict which) {
  if (p > kMaxCensusPrime) throw ResourceError("gap statistics are limited to p <= 10^7");
  return gap_statistics(QuadraticTable(p), which);
}

TwinDensity twin_nonresidue_density(std::uint64_t p, std::uint64_t x) {
  if (p < 3 || !is_prime(p)) throw DomainError("modulus must be an odd prime");
  TwinDensity out;
  if (x < 5) return out;
  const auto primes = primes_up_to(x);
  const auto lambda = mangoldt_table(x);
  auto chi = [p](std::uint64_t n) { return jacobi(static_cast<std::int64_t>(n), p); };

  for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
    const std::uint64_t n = primes[i];
    if (primes[i + 1] != n + 2) continue;
    if (n % p == 0 || (n + 2) % p == 0) {
      ++out.skipped;
      continue;
    }
    ++out.total_twins;
    if (chi(n) == -1 && chi(n + 2) == -1) {
      ++out.qualifying;
      out.qualifying_pairs.emplace_back(n, n + 2);
    }
  }
  if (out.total_twins > 0)
    out.fraction = static_cast<double>(out.qualifying) / static_cast<double>(out.total_twins);

  CompensatedSum<double> weighted;
  for (std::uint64_t n = 2; n + 2 <= x; ++n) {
    if (lambda[n] == 0 || lambda[n + 2] == 0) continue;
    if (n % p == 0 || (n + 2) % p == 0) continue;
    weighted += 0.25 * (1 - chi(n)) * (1 - chi(n + 2)) * lambda[n] * lambda[n + 2];
  }
  out.weighted = weighted.value();
  return out;
}

PatternCensus pattern_census(std::uint64_t p) {
  if (p > kMaxCensusPrime) throw ResourceError("pattern census is limited to p <= 10^7");
  const QuadraticTable chi(p);
  const auto prime = prime_flags(p);

  PatternCensus c;
  c.p = p;
  for (auto pattern : kPairPatterns) {
    c.pair_counts[pattern] = 0;
    c.refined_counts[pattern] = {};
  }
  for (std::uint64_t n = 1; n + 1 <= p - 1; ++n) {
    const auto pattern = classify(chi.is_residue(n), chi.is_residue(n + 1));
    ++c.pair_counts[pattern];
    auto& refined = c.refined_counts[pattern];
    const bool first = prime[n] != 0;
    const bool second = prime[n + 1] != 0;
    if (first && second) {
      ++refined.pp;
    } else if (first) {
      ++refined.pc;
    } else if (second) {
      ++refined.cp;
    } else {
      ++refined.cc;
    }
  }
  c.twins = twin_nonresidue_density(p, p - 1);
  c.residue_gaps = gap_statistics(chi, Verdict::Residue);
  c.nonresidue_gaps = gap_statistics(chi, Verdict::Nonresidue);
  return c;
}

WeightedPatternSum weighted_pattern_sum(std::uint64_t p, std::uint64_t x) {
  if (p < 3 || !is_prime(p)) throw DomainError("modulus must be an odd prime");
  if (x > kMaxCensusPrime) throw ResourceError("weighted pattern sum is limited to x <= 10^7");
  WeightedPatternSum out;
  if (x < 2) return out;
  const auto lambda = mangoldt_table(x);
  const std::uint64_t half = (p - 1) / 2;
  auto kappa = [&](std::uint64_t n) { return mod_pow(n, half, p) == 1 ? 0 : 1; };

  CompensatedSum<double> quarter;
  CompensatedSum<double> product;
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (n % p == 0 || (n + 1) % p == 0) {
      out.skipped.push_back(n);
      continue;
    }
    if (lambda[n] == 0) continue;
    const int chi_n = jacobi(static_cast<std::int64_t>(n), p);
    const int chi_next = jacobi(static_cast<std::int64_t>(n + 1), p);
    quarter += 0.25 * (1 - chi_n) * (1 - chi_next) * lambda[n];
    product += kappa(n) * kappa(n + 1) * lambda[n];
  }
  out.quarter_form = quarter.value();
  out.kappa_form = product.value();
  return out;
}

}  // namespace smallres
