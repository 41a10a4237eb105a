#pragma once

/**
 * @file apsearch.hpp
 * @brief Small prime residues and nonresidues in arithmetic progressions.
 *
 * Least-prime searches, von Mangoldt weighted counts restricted to a
 * progression, the x/(k phi(q)) main term, and sweeps over many primes
 * that measure how the counts behave against those predictions.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallres/bigmod.hpp"
#include "smallres/residues.hpp"

namespace smallres {

inline constexpr std::uint64_t kDefaultScanLimit = 100'000'000ULL;
inline constexpr double kDefaultCountBudget = 1e9;

/// (log p)(log log p)^(3+eps) for k = 2, (log p)(log log p)^(4+eps) for k >= 3.
double bound_x(const OddPrimeContext& ctx, std::uint64_t k, double epsilon);

/// x / (k phi(q))
double main_term_prediction(std::uint64_t k, std::uint64_t q, double x);

struct UnweightedPrediction {
  /// main term at bound_x divided by log log p
  double loglog_convention = 0;
  /// main term at bound_x divided by log(bound_x)
  double log_x_convention = 0;
  double x = 0;
  double main_term = 0;
};

UnweightedPrediction unweighted_prediction(const OddPrimeContext& ctx, std::uint64_t k,
                                           std::uint64_t q, double epsilon);

struct SearchOutcome {
  Verdict target = Verdict::Nonresidue;
  std::uint64_t k = 2;
  ResidueClass cls = ResidueClass::trivial();
  std::optional<std::uint64_t> found_n;
  double bound_x = 0;
  bool within_bound = false;
  /// Scan limit in force; an absent result only says nothing qualifies below it.
  std::uint64_t scan_limit = 0;
};

/// Scans primes n = a (mod q) upward, skipping multiples of p, and stops at
/// the first one whose kth-power verdict equals `target`.
SearchOutcome least_prime_with_verdict(Verdict target, std::uint64_t k, const ResidueClass& cls,
                                       const OddPrimeContext& ctx,
                                       std::uint64_t scan_limit = kDefaultScanLimit,
                                       double epsilon = 0.0);

struct CountReport {
  Verdict target = Verdict::Nonresidue;
  std::uint64_t k = 2;
  ResidueClass cls = ResidueClass::trivial();
  double x = 0;
  /// Sum of Lambda(n) over qualifying n <= x (prime powers included).
  double weighted_count = 0;
  /// Qualifying primes only.
  std::uint64_t unweighted_count = 0;
  /// All primes = a (mod q) up to x, coprime to p.
  std::uint64_t primes_in_class = 0;
  double main_term = 0;
  double error_term = 0;
  double density_estimate = 0;
};

CountReport weighted_count(Verdict target, std::uint64_t k, const ResidueClass& cls, double x,
                           const OddPrimeContext& ctx, double budget = kDefaultCountBudget);

/// |error| / ((log p)(log x)^2), the shape the error term is bounded by.
double error_shape_ratio(const CountReport& report, const OddPrimeContext& ctx);

enum class XRule { Fixed, BoundFormula, WholeField };

struct XSpec {
  XRule rule = XRule::WholeField;
  double fixed_x = 0;
  double epsilon = 0;
};

double resolve_x(const XSpec& spec, const OddPrimeContext& ctx, std::uint64_t k);

struct DensitySample {
  std::uint64_t p = 0;
  std::uint64_t k = 2;
  ResidueClass cls = ResidueClass::trivial();
  Verdict target = Verdict::Nonresidue;
  double x = 0;
  std::uint64_t hits = 0;
  std::uint64_t primes_in_class = 0;
  std::uint64_t primes_total = 0;
  /// hits / primes_in_class
  double observed_fraction = 0;
  /// (hits / primes_total) * k * phi(q): 1 means the naive 1/(k phi(q)) density.
  double correction_estimate = 0;
};

struct DensitySweep {
  std::vector<DensitySample> samples;
  /// Primes in range that were skipped because k does not divide p-1.
  std::vector<std::uint64_t> skipped;
};

DensitySweep density_sweep(Verdict target, std::uint64_t k, const ResidueClass& cls,
                           std::uint64_t p_lo, std::uint64_t p_hi, const XSpec& x_spec,
                           unsigned workers = 1, std::size_t max_primes = 0);

/// One least-nonresidue search of the theorem sweep.
struct TheoremRow {
  std::uint64_t p = 0;
  std::uint64_t k = 2;
  ResidueClass cls = ResidueClass::trivial();
  std::optional<std::uint64_t> found_n;
  double bound = 0;
  bool within_bound = false;
  /// q beyond the log log p regime (only present when explicitly requested)
  bool out_of_regime = false;
};

struct TheoremSweepConfig {
  std::uint64_t p_lo = 100'000;
  std::uint64_t p_hi = 1'000'000;
  /// 0 keeps every prime in range; otherwise an evenly strided sample.
  std::size_t sample = 0;
  std::vector<std::uint64_t> ks{2};
  Verdict target = Verdict::Nonresidue;
  double epsilon = 0.5;
  /// Largest q is floor(log log p) for k = 2 and floor((log log p)^2) for
  /// k >= 3 unless fixed_q is set.
  std::optional<std::uint64_t> fixed_q;
  std::uint64_t scan_limit = kDefaultScanLimit;
  unsigned workers = 1;
};

std::vector<TheoremRow> theorem_sweep(const TheoremSweepConfig& cfg);

/// Largest in-regime q for p and k.
std::uint64_t max_regime_q(const OddPrimeContext& ctx, std::uint64_t k);

/// Evenly strided subset of `values` of size `count` (all when count == 0
/// or count >= size), first and last included.
std::vector<std::uint64_t> stride_sample(const std::vector<std::uint64_t>& values,
                                         std::size_t count);

}  // namespace smallres
