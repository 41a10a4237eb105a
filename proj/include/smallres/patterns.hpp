#pragma once

/**
 * @file patterns.hpp
 * @brief Consecutive residue/nonresidue patterns over [1, p-1].
 *
 * Pair patterns RR, RN, NR, NN of (n, n+1), their refinement by primality
 * of each coordinate, twin-prime nonresidue pairs, and gap statistics
 * between pair occurrences.
 */

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smallres/residues.hpp"

namespace smallres {

enum class PairPattern { RR, RN, NR, NN };

const char* to_string(PairPattern p);

inline constexpr std::array<PairPattern, 4> kPairPatterns = {PairPattern::RR, PairPattern::RN,
                                                             PairPattern::NR, PairPattern::NN};

/// Refinement of a pair pattern by primality: index bit 1 = first coordinate
/// prime, bit 0 = second coordinate prime. "Composite" means "not prime",
/// so 1 counts as composite.
struct RefinedCounts {
  std::uint64_t cc = 0;
  std::uint64_t cp = 0;
  std::uint64_t pc = 0;
  std::uint64_t pp = 0;
  std::uint64_t total() const { return cc + cp + pc + pp; }
};

/// Label such as "RpRc" for pattern RR with first prime, second composite.
std::string refined_label(PairPattern base, bool first_prime, bool second_prime);

struct GapStatistics {
  /// Pair starts r with r and r+1 both in the chosen class.
  std::vector<std::uint64_t> starts;
  /// Differences d - 1 between successive starts (overlapping starts give 0).
  std::map<std::uint64_t, std::uint64_t> raw_histogram;
  std::optional<double> raw_mean;
  /// Maximal runs of the class collapsed to single events; gaps are
  /// measured from the last pair of one run to the first pair of the next.
  std::map<std::uint64_t, std::uint64_t> run_histogram;
  std::optional<double> run_mean;
  std::optional<std::uint64_t> max_gap;
  /// Kolmogorov-Smirnov distance of the pair starts against the uniform
  /// distribution on [1, p-1].
  std::optional<double> ks_statistic;
};

GapStatistics gap_statistics(const QuadraticTable& chi, Verdict which);
GapStatistics gap_statistics(std::uint64_t p, Verdict which);

struct TwinDensity {
  std::uint64_t qualifying = 0;
  std::uint64_t total_twins = 0;
  /// Absent when there are no twin pairs in range.
  std::optional<double> fraction;
  /// (1/4) Sum (1 - (n|p))(1 - (n+2|p)) Lambda(n) Lambda(n+2)
  double weighted = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> qualifying_pairs;
  /// Twin pairs skipped because a member is divisible by p.
  std::uint64_t skipped = 0;
};

/// Twin primes (n, n+2) with n+2 <= x; a pair qualifies when both members
/// are quadratic nonresidues modulo p.
TwinDensity twin_nonresidue_density(std::uint64_t p, std::uint64_t x);

struct PatternCensus {
  std::uint64_t p = 0;
  std::map<PairPattern, std::uint64_t> pair_counts;
  std::map<PairPattern, RefinedCounts> refined_counts;
  TwinDensity twins;
  GapStatistics residue_gaps;
  GapStatistics nonresidue_gaps;
};

PatternCensus pattern_census(std::uint64_t p);

struct WeightedPatternSum {
  /// (1/4) Sum_{2<=n<=x} (1 - (n|p))(1 - (n+1|p)) Lambda(n), Jacobi symbols
  double quarter_form = 0;
  /// Sum_{2<=n<=x} kappa(n) kappa(n+1) Lambda(n), Euler-criterion indicators
  double kappa_form = 0;
  /// Values of n skipped because p divides n(n+1).
  std::vector<std::uint64_t> skipped;
};

WeightedPatternSum weighted_pattern_sum(std::uint64_t p, std::uint64_t x);

}  // namespace smallres
