#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "smallres/errors.hpp"
#include "smallres/patterns.hpp"

using namespace smallres;

namespace {

std::map<PairPattern, std::uint64_t> brute_pairs(std::uint64_t p) {
  std::map<PairPattern, std::uint64_t> out;
  for (std::uint64_t n = 1; n + 1 < p; ++n) {
    const bool a = oracle::legendre(static_cast<std::int64_t>(n), p) == 1;
    const bool b = oracle::legendre(static_cast<std::int64_t>(n + 1), p) == 1;
    ++out[a ? (b ? PairPattern::RR : PairPattern::RN) : (b ? PairPattern::NR : PairPattern::NN)];
  }
  return out;
}

}  // namespace

TEST(Pairs, SmallFieldCounts) {
  const auto c = pattern_census(41);
  EXPECT_EQ(c.pair_counts.at(PairPattern::RR), 9u);
  EXPECT_EQ(c.pair_counts.at(PairPattern::RN), 10u);
  EXPECT_EQ(c.pair_counts.at(PairPattern::NR), 10u);
  EXPECT_EQ(c.pair_counts.at(PairPattern::NN), 10u);
}

TEST(Pairs, MatchBruteForce) {
  for (std::uint64_t p : {3u, 5u, 7u, 13u, 101u, 1009u, 7919u}) {
    const auto c = pattern_census(p);
    const auto b = brute_pairs(p);
    for (auto pat : kPairPatterns) {
      const auto it = b.find(pat);
      ASSERT_EQ(c.pair_counts.at(pat), it == b.end() ? 0 : it->second) << p << " " << to_string(pat);
    }
  }
}

TEST(Pairs, RefinedCountsSumToBase) {
  const auto c = pattern_census(1009);
  for (auto pat : kPairPatterns) EXPECT_EQ(c.refined_counts.at(pat).total(), c.pair_counts.at(pat));
  // (1, 2): 1 is a residue and counts as composite, 2 is prime
  const auto c41 = pattern_census(41);
  EXPECT_GE(c41.refined_counts.at(PairPattern::RR).cp, 1u);
  EXPECT_EQ(refined_label(PairPattern::RN, true, false), "RpNc");
}

TEST(Pairs, PartitionAndClassicalDeviation) {
  for (std::uint64_t p : {1009u, 10007u, 100003u, 999983u}) {
    const auto c = pattern_census(p);
    std::uint64_t total = 0;
    for (auto pat : kPairPatterns) {
      total += c.pair_counts.at(pat);
      const double dev = std::abs(static_cast<double>(c.pair_counts.at(pat)) - (p - 2) / 4.0);
      EXPECT_LE(dev, 3 * std::sqrt(static_cast<double>(p))) << p;
    }
    EXPECT_EQ(total, p - 2);
  }
}

TEST(Gaps, SmallFieldNonresidues) {
  const auto g = gap_statistics(41, Verdict::Nonresidue);
  EXPECT_EQ(g.starts.size(), 10u);
  ASSERT_TRUE(g.raw_mean && g.run_mean && g.max_gap && g.ks_statistic);
  EXPECT_NEAR(*g.raw_mean, 19.0 / 9.0, 1e-12);
  EXPECT_NEAR(*g.run_mean, 19.0 / 3.0, 1e-12);
  EXPECT_EQ(*g.max_gap, 11u);
  EXPECT_GE(*g.ks_statistic, 0.0);
  EXPECT_LE(*g.ks_statistic, 1.0);
}

TEST(Gaps, StartsAreConsecutivePairs) {
  const QuadraticTable chi(1009);
  for (auto which : {Verdict::Residue, Verdict::Nonresidue}) {
    const auto g = gap_statistics(chi, which);
    const int want = which == Verdict::Residue ? 1 : -1;
    std::uint64_t brute = 0;
    for (std::uint64_t n = 1; n + 1 < 1009; ++n) brute += chi.chi(n) == want && chi.chi(n + 1) == want;
    EXPECT_EQ(g.starts.size(), brute);
    for (auto r : g.starts) {
      EXPECT_EQ(chi.chi(r), want);
      EXPECT_EQ(chi.chi(r + 1), want);
    }
    std::uint64_t raw = 0;
    for (auto [gap, count] : g.raw_histogram) raw += count;
    EXPECT_EQ(raw, g.starts.size() - 1);
  }
}

TEST(Gaps, EmptyClass) {
  // mod 5 the residues are 1, 4 and the nonresidues 2, 3: one NN start only
  const auto g = gap_statistics(5, Verdict::Nonresidue);
  EXPECT_EQ(g.starts, std::vector<std::uint64_t>{2});
  EXPECT_FALSE(g.raw_mean);
  const auto r = gap_statistics(5, Verdict::Residue);
  EXPECT_TRUE(r.starts.empty());
  EXPECT_FALSE(r.max_gap);
  EXPECT_FALSE(r.ks_statistic);
}

TEST(Twins, SmallFieldExample) {
  const auto t = twin_nonresidue_density(41, 41);
  EXPECT_EQ(t.qualifying, 2u);
  EXPECT_EQ(t.total_twins, 5u);
  ASSERT_TRUE(t.fraction);
  EXPECT_DOUBLE_EQ(*t.fraction, 0.4);
  using P = std::pair<std::uint64_t, std::uint64_t>;
  EXPECT_EQ(t.qualifying_pairs, (std::vector<P>{{11, 13}, {17, 19}}));
  EXPECT_EQ(twin_nonresidue_density(41, 40).total_twins, 5u);
  EXPECT_NEAR(twin_nonresidue_density(41, 40).weighted, 18.192056324161882, 1e-9);
}

TEST(Twins, NoPairsInRange) {
  const auto t = twin_nonresidue_density(41, 4);
  EXPECT_EQ(t.total_twins, 0u);
  EXPECT_FALSE(t.fraction);
}

TEST(Twins, SkipsMultiplesOfP) {
  const auto t = twin_nonresidue_density(5, 100);
  EXPECT_EQ(t.skipped, 2u);  // (3, 5) and (5, 7)
}

TEST(Twins, LargerModulusFrozen) {
  const auto t = twin_nonresidue_density(1'000'003, 100'000);
  EXPECT_EQ(t.total_twins, 1224u);
  EXPECT_EQ(t.qualifying, 308u);
  EXPECT_LE(t.qualifying, t.total_twins);
  EXPECT_GE(*t.fraction, 0.0);
  EXPECT_LE(*t.fraction, 1.0);
}

TEST(WeightedPatterns, FormsAgree) {
  for (std::uint64_t p : {13u, 41u, 1009u}) {
    const auto w = weighted_pattern_sum(p, 3000);
    EXPECT_NEAR(w.quarter_form, w.kappa_form, 1e-9 * std::max(1.0, w.quarter_form)) << p;
    for (auto n : w.skipped) EXPECT_EQ(n * (n + 1) % p, 0u);
  }
  const auto w = weighted_pattern_sum(10'007, 5000);
  EXPECT_NEAR(w.quarter_form, 1254.77427461610, 1e-8);
  EXPECT_NEAR(w.kappa_form, 1254.77427461610, 1e-8);
}

TEST(WeightedPatterns, BruteForce) {
  const std::uint64_t p = 101;
  double want = 0;
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    if (n % p == 0 || (n + 1) % p == 0) continue;
    const bool nn = oracle::legendre(static_cast<std::int64_t>(n), p) == -1 &&
                    oracle::legendre(static_cast<std::int64_t>(n + 1), p) == -1;
    if (nn) want += oracle::mangoldt(n);
  }
  EXPECT_NEAR(weighted_pattern_sum(p, 2000).kappa_form, want, 1e-9);
}

TEST(Census, Guards) {
  EXPECT_THROW(pattern_census(15), DomainError);
  EXPECT_THROW(weighted_pattern_sum(2, 10), DomainError);
  EXPECT_THROW(pattern_census(10'000'019), ResourceError);
}
