#include "smallres/residues.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "smallres/errors.hpp"
#include "smallres/numeric.hpp"

namespace smallres {

namespace {

BigInt reduce_nonzero(const BigInt& n, const OddPrimeContext& ctx) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), ctx.p().get_mpz_t());
  if (r == 0) throw DomainError("n is divisible by p; the character is undefined at zero");
  return r;
}

void require_order(std::uint64_t k, const OddPrimeContext& ctx) {
  if (k < 1 || !ctx.k_divides_order(k))
    throw DomainError("k = " + std::to_string(k) + " does not divide p-1");
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::Residue ? "Residue" : "Nonresidue"; }

CharacterVerdict kth_power_verdict(const BigInt& n, std::uint64_t k, const OddPrimeContext& ctx) {
  require_order(k, ctx);
  const BigInt reduced = reduce_nonzero(n, ctx);
  CharacterVerdict out;
  out.n = n;
  out.k = k;
  out.witness = mod_pow(reduced, ctx.p_minus_1() / BigInt(static_cast<unsigned long>(k)), ctx.p());
  out.verdict = out.witness == 1 ? Verdict::Residue : Verdict::Nonresidue;
  return out;
}

CharacterVerdict quadratic_verdict(const BigInt& n, const OddPrimeContext& ctx) {
  return kth_power_verdict(n, 2, ctx);
}

PowerResidueTest::PowerResidueTest(const OddPrimeContext& ctx, std::uint64_t k)
    : ctx_(&ctx), k_(k) {
  require_order(k, ctx);
  exponent_big_ = ctx.p_minus_1() / BigInt(static_cast<unsigned long>(k));
  if (ctx.fits_u64()) exponent_u64_ = (ctx.p_u64() - 1) / k;
}

bool PowerResidueTest::is_residue(std::uint64_t n) const {
  if (ctx_->divides(n)) throw DomainError("n is divisible by p; the character is undefined at zero");
  if (ctx_->fits_u64()) return mod_pow(n, exponent_u64_, ctx_->p_u64()) == 1;
  return mod_pow(BigInt(static_cast<unsigned long>(n)), exponent_big_, ctx_->p()) == 1;
}

QuadraticTable::QuadraticTable(std::uint64_t p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw DomainError("QuadraticTable needs an odd prime");
  chi_.assign(p, -1);
  chi_[0] = 0;
  for (std::uint64_t x = 1; x <= (p - 1) / 2; ++x) chi_[mul_mod(x, x, p)] = 1;
}

std::uint64_t least_primitive_root(std::uint64_t p, const Factorization& p_minus_1) {
  if (p == 2) return 1;
  for (std::uint64_t g = 2; g < p; ++g) {
    bool generator = true;
    for (const auto& [r, e] : p_minus_1) {
      if (mod_pow(g, (p - 1) / r, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw DomainError("no primitive root found; modulus is not prime");
}

SmallFieldTable build_small_field_table(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("SmallFieldTable needs an odd prime");
  if (p > SmallFieldTable::kMaxPrime) throw ResourceError("SmallFieldTable is limited to p <= 10^6");
  SmallFieldTable t;
  t.p_ = p;
  t.factors_ = factor_trial(p - 1);
  t.divisors_ = divisors(t.factors_);
  t.tau_ = least_primitive_root(p, t.factors_);
  t.powers_.resize(p - 1);
  t.index_.assign(p, 0);
  std::uint64_t x = 1;
  for (std::uint64_t e = 0; e < p - 1; ++e) {
    t.powers_[e] = x;
    t.index_[x] = e;
    x = x * t.tau_ % p;
  }
  return t;
}

void SmallFieldTable::require_order(std::uint64_t k) const {
  if (k < 1 || (p_ - 1) % k != 0)
    throw DomainError("k = " + std::to_string(k) + " does not divide p-1");
}

std::vector<std::uint64_t> SmallFieldTable::residue_set(std::uint64_t k) const {
  require_order(k);
  std::vector<std::uint64_t> out;
  out.reserve((p_ - 1) / k);
  for (std::uint64_t m = 0; m < (p_ - 1) / k; ++m) out.push_back(power(k * m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> SmallFieldTable::nonresidue_set(std::uint64_t k) const {
  require_order(k);
  std::vector<std::uint64_t> out;
  out.reserve(p_ - 1 - (p_ - 1) / k);
  for (std::uint64_t a = 1; a < p_; ++a) {
    if (!is_kth_power(a, k)) out.push_back(a);
  }
  return out;
}

std::vector<std::complex<double>> unit_roots(std::uint64_t p) {
  std::vector<std::complex<double>> roots(p);
  for (std::uint64_t j = 0; j < p; ++j) {
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p));
  }
  return roots;
}

CharacterSumOracle::CharacterSumOracle(const SmallFieldTable& table)
    : table_(&table), p_(table.p()) {
  if (p_ > kMaxPrime) throw ResourceError("character-sum oracle is limited to p <= 10^5");
  const auto roots = unit_roots(p_);
  kernel_.resize(p_);
  for (std::uint64_t c = 0; c < p_; ++c) {
    CompensatedSum<std::complex<double>> acc;
    std::uint64_t phase = 0;
    for (std::uint64_t s = 0; s < p_; ++s) {
      acc += roots[phase];
      phase += c;
      if (phase >= p_) phase -= p_;
    }
    kernel_[c] = acc.value();
  }
}

std::complex<double> CharacterSumOracle::raw_coset(std::uint64_t a, std::uint64_t k,
                                                   std::uint64_t j) const {
  if (a < 1 || a >= p_) throw DomainError("oracle argument must lie in [1, p-1]");
  if (k < 1 || (p_ - 1) % k != 0) throw DomainError("k does not divide p-1");
  CompensatedSum<std::complex<double>> acc;
  const std::uint64_t terms = (p_ - 1) / k;
  for (std::uint64_t m = 0; m < terms; ++m) {
    const std::uint64_t c = (table_->power(k * m + j) + p_ - a) % p_;
    acc += kernel_[c];
  }
  return acc.value() / static_cast<double>(p_);
}

std::complex<double> CharacterSumOracle::raw(std::uint64_t a, std::uint64_t k,
                                             Indicator which) const {
  if (which == Indicator::Residue) return raw_coset(a, k, 0);
  std::complex<double> total{};
  for (std::uint64_t j = 1; j < k; ++j) total += raw_coset(a, k, j);
  return total;
}

int CharacterSumOracle::evaluate(std::uint64_t a, std::uint64_t k, Indicator which) const {
  const auto value = raw(a, k, which);
  const double nearest = std::round(value.real());
  const double residue = std::abs(value - std::complex<double>(nearest, 0.0));
  if ((nearest != 0.0 && nearest != 1.0) || residue > kIntegrityTolerance) {
    throw NumericalIntegrityError("characteristic sum at a = " + std::to_string(a) +
                                  " did not evaluate to 0 or 1 (value " +
                                  std::to_string(value.real()) + ")");
  }
  return static_cast<int>(nearest);
}

int char_function_oracle(std::uint64_t a, std::uint64_t k, const SmallFieldTable& table,
                         Indicator which) {
  return CharacterSumOracle(table).evaluate(a, k, which);
}

}  // namespace smallres
