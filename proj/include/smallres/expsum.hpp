#pragma once

/**
 * @file expsum.hpp
 * @brief Exact evaluation of the exponential sums and fiber counts behind
 *        the error-term estimates, for small primes.
 *
 * All sums are evaluated term by term in double-precision complex
 * arithmetic with compensated accumulation. Root-of-unity values are taken
 * from a table e^(2 pi i j / p), so each term is exact to one rounding.
 */

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "smallres/residues.hpp"

namespace smallres {

/// sqrt(p) (log p)^2
double expsum_bound(std::uint64_t p);

struct ExpSumSample {
  std::uint64_t p = 0;
  std::uint64_t tau = 0;
  std::uint64_t b = 0;
  std::uint64_t x_cutoff = 0;
  std::complex<double> value;
  double magnitude = 0;
  double bound = 0;
  double ratio = 0;
};

/// Sum_{1 <= n <= x} e^(2 pi i b tau^n / p), tau^n advanced by one
/// multiplication per term.
ExpSumSample incomplete_expsum(std::uint64_t b, std::uint64_t x_cutoff,
                               const SmallFieldTable& table);

/// Largest partial-sum magnitude over every cutoff x in [1, p-1] for one b.
struct PartialSumPeak {
  std::uint64_t b = 0;
  std::uint64_t argmax_x = 0;
  double magnitude = 0;
  double ratio = 0;
};

PartialSumPeak partial_sum_peak(std::uint64_t b, const SmallFieldTable& table);

struct ExpSumRatioRow {
  std::uint64_t p = 0;
  std::uint64_t tau = 0;
  std::uint64_t worst_b = 0;
  std::uint64_t worst_x = 0;
  double max_magnitude = 0;
  double bound = 0;
  double max_ratio = 0;
};

/// Scans every b in [1, p-1] and every cutoff; reports the worst case.
ExpSumRatioRow expsum_ratio_scan(const SmallFieldTable& table, unsigned workers = 1);

struct UHatValue {
  std::uint64_t a = 0;
  /// Sum_{1<=b<=p-1} e^(-2 pi i a b / p) Sum_{1<=n<p/2} e^(2 pi i b tau^(2n+1) / p)
  std::complex<double> value;
  /// value + Sum_{1<=n<p/2} e^(2 pi i tau^(2n+1) / p)
  std::complex<double> decomposition_residual;
  double magnitude = 0;
  double bound = 0;
  double ratio = 0;
};

/// Literal double sum for one a. Requires a to be a nonzero quadratic residue.
UHatValue fourier_U_hat(std::uint64_t a, const SmallFieldTable& table);

/// Same double sum with the b and n loops exchanged.
std::complex<double> fourier_U_hat_swapped(std::uint64_t a, const SmallFieldTable& table);

/// Evaluates U-hat for every quadratic residue a, sharing the inner sums
/// over n between all a.
std::vector<UHatValue> fourier_U_hat_all_residues(const SmallFieldTable& table);

/// Sum_{s=0}^{p-1} e^(2 pi i (tau^(2n+1) - a) s / p)
std::complex<double> complete_sum(std::uint64_t n, std::uint64_t a, const SmallFieldTable& table);

/// Sum_{b=0}^{p-1} |Sum_{1<=n<p/2} e^(2 pi i b tau^(2n+1) / p)|^2
double nonresidue_energy(const SmallFieldTable& table);

enum class FiberMap { Alpha, Beta };

const char* to_string(FiberMap m);

struct FiberHistogram {
  std::uint64_t p = 0;
  std::uint64_t x = 0;
  std::uint64_t k = 2;
  FiberMap map = FiberMap::Alpha;
  /// fiber size -> number of targets in F_p attaining it (target 0 included)
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t domain_size = 0;
  std::uint64_t zero_fiber = 0;
  std::uint64_t max_nonzero_fiber = 0;
  std::uint64_t min_nonzero_fiber = 0;
};

struct FiberPair {
  FiberHistogram alpha;
  FiberHistogram beta;
};

/// alpha(m, n) = tau^(km+1) - n over m in [0, (p-1)/k), n in [2, x];
/// beta(u, v) = uv over [1, x] x [1, p-1].
FiberPair fiber_histograms(std::uint64_t x, std::uint64_t k, const SmallFieldTable& table);

}  // namespace smallres
