// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "smallres/apsearch.hpp"
#include "smallres/expsum.hpp"
#include "smallres/parallel.hpp"
#include "smallres/patterns.hpp"
#include "smallres/reproduce.hpp"
#include "smallres/residues.hpp"

using namespace smallres;

namespace {

constexpr double kTolSmallExample = 0.01;
constexpr double kTolUnweighted = 0.05;
constexpr double kTolLargeExample = 0.5;
constexpr double kOracleResidual = 1e-6;
constexpr double kAc1Seconds = 10;
constexpr double kAc23Seconds = 30;
constexpr double kAc6Seconds = 300;
constexpr std::size_t kSweepPrimes = 1000;
constexpr double kSweepEpsilon = 0.5;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

void near(Outcome& o, const std::string& what, double got, double want, double tol) {
  const bool ok = std::abs(got - want) <= tol;
  o.require(ok, what + " " + num(got, 4) + " vs " + num(want, 2) + " +/- " + num(tol, 2));
  if (ok) o.note(what + " " + num(got, 2));
}

std::size_t count_rows(const ScenarioReport& r, const std::string& kind, CheckStatus s) {
  return static_cast<std::size_t>(std::count_if(r.rows.begin(), r.rows.end(), [&](const CheckRow& row) {
    return row.kind == kind && row.status == s;
  }));
}

void verdict_rows(Outcome& o, const ScenarioReport& r, const std::string& what) {
  const auto pass = count_rows(r, "verdict", CheckStatus::Pass);
  const auto bad = count_rows(r, "verdict", CheckStatus::Discrepancy) +
                   count_rows(r, "verdict", CheckStatus::Fail);
  o.require(pass > 0 && bad == 0, what + ": " + std::to_string(bad) + " of " +
                                      std::to_string(pass + bad) + " listed elements disagree");
  if (bad == 0) o.note(what + ": " + std::to_string(pass) + " elements agree");
}

void no_fail_rows(Outcome& o, const ScenarioReport& r) {
  o.require(r.count(CheckStatus::Fail) == 0, r.name + " has " +
                                                 std::to_string(r.count(CheckStatus::Fail)) +
                                                 " internal cross-check failures");
}

// Quadratic lists modulo 10^24 + 7
Outcome ac1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto ctx = OddPrimeContext::make("1000000000000000000000007");
  const auto pred = unweighted_prediction(ctx, 2, 4, 0);
  near(o, "x", pred.x, 3568.93, kTolSmallExample);
  near(o, "main term", pred.main_term, 892.23, kTolSmallExample);
  near(o, "unweighted", pred.loglog_convention, 222.39, kTolUnweighted);
  for (const char* name : {"quadratic-residues-1e24", "quadratic-nonresidues-1e24"}) {
    const auto r = reproduce_scenario(name);
    no_fail_rows(o, r);
    verdict_rows(o, r, r.name + " verdicts");
  }
  const auto r91 = reproduce_scenario("quadratic-residues-1e24");
  bool flagged = false;
  for (const auto& row : r91.rows)
    if (row.kind == "primality" && row.check.find(" 87 ") != std::string::npos)
      flagged = row.status == CheckStatus::Discrepancy;
  o.require(flagged, "composite 87 not flagged");
  if (flagged) o.note("87 = 3*29 flagged DISCREPANCY");
  const double s = seconds_since(t0);
  o.require(s < kAc1Seconds, "runtime " + num(s) + " s");
  o.note(num(s, 3) + " s");
  return o;
}

void large_example(Outcome& o, const char* scenario, const char* p_text, std::uint64_t k,
                   std::uint64_t q, double want_x, double want_pred) {
  const auto ctx = OddPrimeContext::make(p_text);
  o.require(is_prime(ctx.p()), "p is not prime");
  o.require(ctx.k_divides_order(k), std::to_string(k) + " does not divide p-1");
  const auto pred = unweighted_prediction(ctx, k, q, 0);
  near(o, "x", pred.x, want_x, kTolLargeExample);
  near(o, "prediction", pred.main_term, want_pred, kTolLargeExample);
  const auto r = reproduce_scenario(scenario);
  no_fail_rows(o, r);
  const auto exact = count_rows(r, "exact", CheckStatus::Pass);
  o.require(exact == 1, "(p-1)/k differs from the printed order");
  if (exact == 1) o.note("(p-1)/" + std::to_string(k) + " matches");
  verdict_rows(o, r, "listed nonresidues");
}

// Cubic lists modulo 2^128 + 51
Outcome ac2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  large_example(o, "cubic-2e128", "340282366920938463463374607431768211507", 3, 8, 35915.80, 2992.98);
  const auto r = reproduce_scenario("cubic-2e128");
  std::size_t marked_ok = 0, marked_bad = 0;
  for (const auto& row : r.rows) {
    if (row.kind != "primality" || row.expected != "prime") continue;
    (row.status == CheckStatus::Pass ? marked_ok : marked_bad) += 1;
  }
  o.require(marked_bad == 0, std::to_string(marked_bad) + " marked elements are not prime");
  if (marked_bad == 0) o.note(std::to_string(marked_ok) + " marked elements prime");
  const double s = seconds_since(t0);
  o.require(s < kAc23Seconds, "runtime " + num(s) + " s");
  o.note(num(s, 3) + " s");
  return o;
}

// 7th-power lists modulo 10^48 + 217
Outcome ac3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const char* p_text = "1000000000000000000000000000000000000000000000217";
  large_example(o, "septic-1e48", p_text, 7, 3, 54172.84, 3869.49);
  const auto ctx = OddPrimeContext::make(p_text);
  const std::uint64_t want[] = {19, 83};
  for (std::uint64_t a : {1u, 2u}) {
    const auto r = least_prime_with_verdict(Verdict::Nonresidue, 7, ResidueClass::make(a, 3), ctx);
    const std::uint64_t got = r.found_n.value_or(0);
    o.require(got == want[a - 1], "least nonresidue = " + std::to_string(a) + " mod 3 is " +
                                      std::to_string(got) + ", expected " + std::to_string(want[a - 1]));
    if (got == want[a - 1]) o.note("least in class " + std::to_string(a) + " is " + std::to_string(got));
  }
  const double s = seconds_since(t0);
  o.require(s < kAc23Seconds, "runtime " + num(s) + " s");
  o.note(num(s, 3) + " s");
  return o;
}

// Literal character-sum indicator against the Euler criterion.
Outcome ac4() {
  Outcome o;
  double worst = 0;
  std::size_t points = 0, mismatches = 0, primes = 0;
  for (std::uint64_t p : primes_between(3, 500)) {
    ++primes;
    const auto table = build_small_field_table(p);
    const CharacterSumOracle oracle(table);
    const auto ctx = OddPrimeContext::make(BigInt(p), true);
    for (std::uint64_t k : table.orders()) {
      if (k < 2) continue;
      const PowerResidueTest euler(ctx, k);
      for (std::uint64_t a = 1; a < p; ++a) {
        const auto raw = oracle.raw(a, k, Indicator::Nonresidue);
        const double rounded = std::round(raw.real());
        worst = std::max({worst, std::abs(raw.real() - rounded), std::abs(raw.imag())});
        if ((rounded == 1.0) != !euler.is_residue(a)) ++mismatches;
        ++points;
      }
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " disagreements");
  o.require(worst < kOracleResidual, "residual " + std::to_string(worst));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", worst);
  o.note(std::to_string(primes) + " primes, " + std::to_string(points) + " points, max residual " + buf);
  return o;
}

// Fiber sizes of alpha and beta, exhaustively.
Outcome ac5() {
  Outcome o;
  std::size_t cases = 0;
  for (std::uint64_t p : {101u, 1009u, 10007u}) {
    const auto table = build_small_field_table(p);
    for (std::uint64_t x : {5u, 10u, 50u}) {
      for (std::uint64_t k : {2u, 3u}) {
        if ((p - 1) % k) continue;
        const auto f = fiber_histograms(x, k, table);
        const std::string tag = "p=" + std::to_string(p) + " x=" + std::to_string(x) + " k=" + std::to_string(k);
        o.require(f.beta.min_nonzero_fiber == x && f.beta.max_nonzero_fiber == x, tag + " beta fiber != x");
        o.require(f.alpha.max_nonzero_fiber <= x - 1, tag + " alpha fiber > x-1");
        ++cases;
      }
    }
  }
  o.note(std::to_string(cases) + " (p, x, k) cases");
  return o;
}

// Incomplete sums and U-hat against sqrt(p) (log p)^2.
Outcome ac6() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t p : {1009u, 10007u}) {
    const auto r = expsum_ratio_scan(build_small_field_table(p), default_workers());
    o.note("p=" + std::to_string(p) + " max ratio " + num(r.max_ratio, 4) + " (b=" +
           std::to_string(r.worst_b) + ", x=" + std::to_string(r.worst_x) + ")" +
           (r.max_ratio > 1 ? " exceeds 1: finding" : ""));
  }
  double worst = 0;
  std::uint64_t worst_p = 0;
  std::size_t primes = 0;
  for (std::uint64_t p : primes_between(3, 2003)) {
    ++primes;
    for (const auto& u : fourier_U_hat_all_residues(build_small_field_table(p))) {
      if (u.ratio > worst) {
        worst = u.ratio;
        worst_p = p;
      }
    }
  }
  o.require(worst <= 1.0, "U-hat ratio " + num(worst, 4) + " at p=" + std::to_string(worst_p));
  o.note("U-hat max ratio " + num(worst, 4) + " over " + std::to_string(primes) + " primes");
  const double s = seconds_since(t0);
  o.require(s < kAc6Seconds, "runtime " + num(s) + " s");
  o.note(num(s, 1) + " s");
  return o;
}

// Least prime nonresidue in every small progression, sampled primes.
Outcome ac7() {
  Outcome o;
  TheoremSweepConfig cfg;
  cfg.p_lo = 100'000;
  cfg.p_hi = 1'000'000;
  cfg.sample = kSweepPrimes;
  cfg.epsilon = kSweepEpsilon;
  cfg.workers = default_workers();
  const auto rows = theorem_sweep(cfg);
  std::size_t violations = 0;
  std::vector<std::uint64_t> ps;
  double worst = 0;
  for (const auto& r : rows) {
    ps.push_back(r.p);
    if (r.found_n) worst = std::max(worst, static_cast<double>(*r.found_n) / r.bound);
    if (!r.within_bound) {
      ++violations;
      std::printf("counterexample p=%llu q=%llu a=%llu found=%s bound=%.2f\n",
                  static_cast<unsigned long long>(r.p), static_cast<unsigned long long>(r.cls.q()),
                  static_cast<unsigned long long>(r.cls.a()),
                  r.found_n ? std::to_string(*r.found_n).c_str() : "none", r.bound);
    }
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  o.require(ps.size() >= 500, "only " + std::to_string(ps.size()) + " primes");
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.note(std::to_string(ps.size()) + " primes, " + std::to_string(rows.size()) +
         " searches, max found/bound " + num(worst, 4));

  // The wider ceil(log log p) reading adds q = 3; reported, not required.
  cfg.fixed_q = 3;
  std::size_t wide_violations = 0;
  for (const auto& r : theorem_sweep(cfg)) wide_violations += !r.within_bound;
  o.note("with q <= 3: " + std::to_string(wide_violations) + " violations");
  return o;
}

// Pair partition, classical deviation, equinumerosity and the small twin example.
Outcome ac8() {
  Outcome o;
  const auto sample = stride_sample(primes_between(1000, 1'000'000), 60);
  double worst = 0;
  for (std::uint64_t p : sample) {
    const auto c = pattern_census(p);
    std::uint64_t total = 0;
    for (auto pat : kPairPatterns) {
      total += c.pair_counts.at(pat);
      const double dev = std::abs(static_cast<double>(c.pair_counts.at(pat)) - (p - 2) / 4.0) /
                         std::sqrt(static_cast<double>(p));
      worst = std::max(worst, dev);
    }
    o.require(total == p - 2, "partition broken at p=" + std::to_string(p));
  }
  o.require(worst <= 3.0, "deviation " + num(worst, 3) + " sqrt(p)");
  o.note(std::to_string(sample.size()) + " primes, max deviation " + num(worst, 3) + " sqrt(p)");

  std::size_t eq_primes = 0;
  for (std::uint64_t p : primes_between(3, 1999)) {
    const QuadraticTable chi(p);
    std::uint64_t plus = 0;
    for (std::uint64_t n = 1; n < p; ++n) plus += chi.chi(n) == 1;
    o.require(plus == (p - 1) / 2, "equinumerosity broken at p=" + std::to_string(p));
    ++eq_primes;
  }
  o.note("equinumerosity on " + std::to_string(eq_primes) + " primes");

  const auto t = twin_nonresidue_density(41, 41);
  const bool twins_ok = t.qualifying == 2 && t.total_twins == 4 && t.fraction && *t.fraction == 0.5;
  std::string list;
  for (auto [a, b] : t.qualifying_pairs) list += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  o.require(twins_ok, "p=41 twins give (" + std::to_string(t.qualifying) + ", " +
                          std::to_string(t.total_twins) + ", " + num(t.fraction.value_or(-1), 2) +
                          "), expected (2, 4, 0.50)");
  o.note("qualifying pairs" + list);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 quadratic lists modulo 10^24+7", ac1},
      {"AC2 cubic lists modulo 2^128+51", ac2},
      {"AC3 7th-power lists modulo 10^48+217", ac3},
      {"AC4 character-sum oracle equivalence p <= 500", ac4},
      {"AC5 fiber sizes", ac5},
      {"AC6 exponential-sum bounds", ac6},
      {"AC7 least nonresidue sweep over [1e5, 1e6]", ac7},
      {"AC8 pair partition, equinumerosity, twins at p = 41", ac8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
