#include "smallres/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smallres/errors.hpp"
#include "smallres/numeric.hpp"
#include "smallres/parallel.hpp"

namespace smallres {

namespace {

using Roots = std::vector<std::complex<double>>;

std::uint64_t checked_b(std::uint64_t b, std::uint64_t p) {
  if (b % p == 0) throw DomainError("b must be nonzero modulo p");
  return b % p;
}

std::complex<double> incomplete_sum(std::uint64_t b, std::uint64_t x, const SmallFieldTable& table,
                                    const Roots& roots) {
  const std::uint64_t p = table.p();
  CompensatedSum<std::complex<double>> acc;
  std::uint64_t t = table.tau();
  for (std::uint64_t n = 1; n <= x; ++n) {
    acc += roots[mul_mod(b, t, p)];
    t = t * table.tau() % p;
  }
  return acc.value();
}

/// S(b) = Sum_{1 <= n < p/2} e^(2 pi i b tau^(2n+1) / p) for one b.
std::complex<double> nonresidue_sum(std::uint64_t b, const SmallFieldTable& table,
                                    const Roots& roots) {
  const std::uint64_t p = table.p();
  CompensatedSum<std::complex<double>> acc;
  for (std::uint64_t n = 1; 2 * n < p; ++n) acc += roots[mul_mod(b, table.power(2 * n + 1), p)];
  return acc.value();
}

void require_residue(std::uint64_t a, const SmallFieldTable& table) {
  if (a % table.p() == 0) throw DomainError("U-hat is evaluated at nonzero a only");
  if (!table.is_kth_power(a, 2)) throw DomainError("U-hat is evaluated at quadratic residues only");
}

UHatValue finish(std::uint64_t a, std::complex<double> value, std::complex<double> s1,
                 std::uint64_t p) {
  UHatValue out;
  out.a = a;
  out.value = value;
  out.decomposition_residual = value + s1;
  out.magnitude = std::abs(value);
  out.bound = expsum_bound(p);
  out.ratio = out.magnitude / out.bound;
  return out;
}

}  // namespace

double expsum_bound(std::uint64_t p) {
  const double lp = std::log(static_cast<double>(p));
  return std::sqrt(static_cast<double>(p)) * lp * lp;
}

ExpSumSample incomplete_expsum(std::uint64_t b, std::uint64_t x_cutoff,
                               const SmallFieldTable& table) {
  const std::uint64_t p = table.p();
  b = checked_b(b, p);
  if (x_cutoff > p - 1) throw DomainError("x_cutoff must be <= p-1");
  const auto roots = unit_roots(p);
  ExpSumSample s;
  s.p = p;
  s.tau = table.tau();
  s.b = b;
  s.x_cutoff = x_cutoff;
  s.value = incomplete_sum(b, x_cutoff, table, roots);
  s.magnitude = std::abs(s.value);
  s.bound = expsum_bound(p);
  s.ratio = s.magnitude / s.bound;
  return s;
}

namespace {

PartialSumPeak peak_with(std::uint64_t b, const SmallFieldTable& table, const Roots& roots) {
  const std::uint64_t p = table.p();
  PartialSumPeak peak;
  peak.b = b;
  CompensatedSum<std::complex<double>> acc;
  std::uint64_t t = table.tau();
  for (std::uint64_t n = 1; n <= p - 1; ++n) {
    acc += roots[mul_mod(b, t, p)];
    t = t * table.tau() % p;
    const double mag = std::abs(acc.value());
    if (mag > peak.magnitude) {
      peak.magnitude = mag;
      peak.argmax_x = n;
    }
  }
  peak.ratio = peak.magnitude / expsum_bound(p);
  return peak;
}

}  // namespace

PartialSumPeak partial_sum_peak(std::uint64_t b, const SmallFieldTable& table) {
  b = checked_b(b, table.p());
  return peak_with(b, table, unit_roots(table.p()));
}

ExpSumRatioRow expsum_ratio_scan(const SmallFieldTable& table, unsigned workers) {
  const std::uint64_t p = table.p();
  const auto roots = unit_roots(p);
  const auto peaks =
      parallel_map(p - 1, workers, [&](std::size_t i) { return peak_with(i + 1, table, roots); });
  ExpSumRatioRow row;
  row.p = p;
  row.tau = table.tau();
  row.bound = expsum_bound(p);
  for (const auto& peak : peaks) {
    if (peak.magnitude > row.max_magnitude) {
      row.max_magnitude = peak.magnitude;
      row.worst_b = peak.b;
      row.worst_x = peak.argmax_x;
    }
  }
  row.max_ratio = row.max_magnitude / row.bound;
  return row;
}

UHatValue fourier_U_hat(std::uint64_t a, const SmallFieldTable& table) {
  require_residue(a, table);
  const std::uint64_t p = table.p();
  const auto roots = unit_roots(p);
  const std::uint64_t ar = a % p;
  CompensatedSum<std::complex<double>> outer;
  for (std::uint64_t b = 1; b < p; ++b) {
    const std::uint64_t phase = (p - mul_mod(ar, b, p)) % p;
    outer += roots[phase] * nonresidue_sum(b, table, roots);
  }
  return finish(a, outer.value(), nonresidue_sum(1, table, roots), p);
}

std::complex<double> fourier_U_hat_swapped(std::uint64_t a, const SmallFieldTable& table) {
  require_residue(a, table);
  const std::uint64_t p = table.p();
  const auto roots = unit_roots(p);
  const std::uint64_t ar = a % p;
  CompensatedSum<std::complex<double>> outer;
  for (std::uint64_t n = 1; 2 * n < p; ++n) {
    const std::uint64_t c = (table.power(2 * n + 1) + p - ar) % p;
    CompensatedSum<std::complex<double>> inner;
    for (std::uint64_t b = 1; b < p; ++b) inner += roots[mul_mod(b, c, p)];
    outer += inner.value();
  }
  return outer.value();
}

std::vector<UHatValue> fourier_U_hat_all_residues(const SmallFieldTable& table) {
  const std::uint64_t p = table.p();
  const auto roots = unit_roots(p);
  std::vector<std::complex<double>> inner(p);
  for (std::uint64_t b = 1; b < p; ++b) inner[b] = nonresidue_sum(b, table, roots);

  std::vector<UHatValue> out;
  for (std::uint64_t a : table.residue_set(2)) {
    CompensatedSum<std::complex<double>> outer;
    for (std::uint64_t b = 1; b < p; ++b) outer += roots[(p - mul_mod(a, b, p)) % p] * inner[b];
    out.push_back(finish(a, outer.value(), inner[1], p));
  }
  return out;
}

std::complex<double> complete_sum(std::uint64_t n, std::uint64_t a, const SmallFieldTable& table) {
  const std::uint64_t p = table.p();
  const auto roots = unit_roots(p);
  const std::uint64_t c = (table.power(2 * n + 1) + p - a % p) % p;
  CompensatedSum<std::complex<double>> acc;
  for (std::uint64_t s = 0; s < p; ++s) acc += roots[mul_mod(c, s, p)];
  return acc.value();
}

double nonresidue_energy(const SmallFieldTable& table) {
  const std::uint64_t p = table.p();
  const auto roots = unit_roots(p);
  CompensatedSum<double> acc;
  for (std::uint64_t b = 0; b < p; ++b) acc += std::norm(nonresidue_sum(b, table, roots));
  return acc.value();
}

const char* to_string(FiberMap m) { return m == FiberMap::Alpha ? "alpha" : "beta"; }

namespace {

FiberHistogram summarize(std::uint64_t p, std::uint64_t x, std::uint64_t k, FiberMap map,
                         const std::vector<std::uint64_t>& counts, std::uint64_t domain) {
  FiberHistogram h;
  h.p = p;
  h.x = x;
  h.k = k;
  h.map = map;
  h.domain_size = domain;
  h.zero_fiber = counts[0];
  h.min_nonzero_fiber = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t t = 0; t < p; ++t) {
    ++h.histogram[counts[t]];
    if (t == 0) continue;
    h.max_nonzero_fiber = std::max(h.max_nonzero_fiber, counts[t]);
    h.min_nonzero_fiber = std::min(h.min_nonzero_fiber, counts[t]);
  }
  return h;
}

}  // namespace

FiberPair fiber_histograms(std::uint64_t x, std::uint64_t k, const SmallFieldTable& table) {
  const std::uint64_t p = table.p();
  if (p > CharacterSumOracle::kMaxPrime) throw ResourceError("fiber histograms need p <= 10^5");
  if (x < 2 || x >= p) throw DomainError("fiber histograms need 2 <= x < p");
  if (k < 1 || (p - 1) % k != 0) throw DomainError("k does not divide p-1");

  std::vector<std::uint64_t> counts(p, 0);
  const std::uint64_t coset = (p - 1) / k;
  for (std::uint64_t m = 0; m < coset; ++m) {
    const std::uint64_t base = table.power(k * m + 1);
    for (std::uint64_t n = 2; n <= x; ++n) ++counts[(base + p - n % p) % p];
  }
  FiberPair out;
  out.alpha = summarize(p, x, k, FiberMap::Alpha, counts, coset * (x - 1));

  std::fill(counts.begin(), counts.end(), 0);
  for (std::uint64_t u = 1; u <= x; ++u) {
    for (std::uint64_t v = 1; v < p; ++v) ++counts[u * v % p];
  }
  out.beta = summarize(p, x, k, FiberMap::Beta, counts, x * (p - 1));
  return out;
}

}  // namespace smallres
