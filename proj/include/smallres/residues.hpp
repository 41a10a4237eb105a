#pragma once

/**
 * @file residues.hpp
 * @brief Quadratic and kth-power residue characters modulo an odd prime.
 *
 * Two independent routes are provided. The Euler criterion
 * n^((p-1)/k) = 1 (mod p) decides residuosity for any p with a single
 * modular exponentiation. For small p the characteristic functions can
 * instead be written as double exponential sums over a primitive-root
 * enumeration; CharacterSumOracle evaluates those sums in complex
 * arithmetic and serves as a cross-check of the fast route.
 */

#include <complex>
#include <cstdint>
#include <vector>

#include "smallres/bigmod.hpp"

namespace smallres {

enum class Verdict { Residue, Nonresidue };

const char* to_string(Verdict v);

struct CharacterVerdict {
  BigInt n;
  std::uint64_t k = 2;
  Verdict verdict = Verdict::Residue;
  /// n^((p-1)/k) mod p
  BigInt witness;
};

CharacterVerdict quadratic_verdict(const BigInt& n, const OddPrimeContext& ctx);
CharacterVerdict kth_power_verdict(const BigInt& n, std::uint64_t k, const OddPrimeContext& ctx);

/// Euler-criterion test bound to one (p, k); uses 64-bit arithmetic when
/// p fits. Candidates must be coprime to p.
class PowerResidueTest {
 public:
  PowerResidueTest(const OddPrimeContext& ctx, std::uint64_t k);

  bool is_residue(std::uint64_t n) const;
  Verdict verdict(std::uint64_t n) const {
    return is_residue(n) ? Verdict::Residue : Verdict::Nonresidue;
  }
  std::uint64_t k() const { return k_; }

 private:
  const OddPrimeContext* ctx_;
  std::uint64_t k_;
  BigInt exponent_big_;
  std::uint64_t exponent_u64_ = 0;
};

/// Quadratic character of every element of [0, p) built from the squares,
/// for sweeps over a whole field. chi(0) = 0.
class QuadraticTable {
 public:
  explicit QuadraticTable(std::uint64_t p);
  std::uint64_t p() const { return p_; }
  int chi(std::uint64_t n) const { return chi_[n % p_]; }
  bool is_residue(std::uint64_t n) const { return chi(n) == 1; }
  bool is_nonresidue(std::uint64_t n) const { return chi(n) == -1; }

 private:
  std::uint64_t p_;
  std::vector<signed char> chi_;
};

/// Discrete-log data for a small prime field, fixed to the least primitive
/// root. Residue sets are materialized on demand from the index table.
class SmallFieldTable {
 public:
  static constexpr std::uint64_t kMaxPrime = 1'000'000;

  std::uint64_t p() const { return p_; }
  std::uint64_t tau() const { return tau_; }
  const Factorization& p_minus_1_factors() const { return factors_; }
  /// Every k dividing p-1, ascending.
  const std::vector<std::uint64_t>& orders() const { return divisors_; }

  /// tau^e mod p for any e >= 0
  std::uint64_t power(std::uint64_t e) const { return powers_[e % (p_ - 1)]; }
  /// log_tau(a) for a in [1, p-1]
  std::uint64_t index(std::uint64_t a) const { return index_[a % p_]; }
  bool is_kth_power(std::uint64_t a, std::uint64_t k) const { return index(a) % k == 0; }

  /// {tau^(km)}: the kth powers, ascending.
  std::vector<std::uint64_t> residue_set(std::uint64_t k) const;
  /// [1, p-1] minus residue_set(k), ascending.
  std::vector<std::uint64_t> nonresidue_set(std::uint64_t k) const;

  friend SmallFieldTable build_small_field_table(std::uint64_t p);

 private:
  void require_order(std::uint64_t k) const;

  std::uint64_t p_ = 0;
  std::uint64_t tau_ = 0;
  Factorization factors_;
  std::vector<std::uint64_t> divisors_;
  std::vector<std::uint64_t> powers_;
  std::vector<std::uint64_t> index_;
};

/// Least primitive root search over candidates 2, 3, ...
SmallFieldTable build_small_field_table(std::uint64_t p);

std::uint64_t least_primitive_root(std::uint64_t p, const Factorization& p_minus_1);

enum class Indicator { Residue, Nonresidue };

/// Double-sum characteristic functions evaluated literally in complex
/// arithmetic. The inner sum over s depends only on the integer
/// c = (tau^e - a) mod p; it is evaluated once per c and reused.
///
/// Index ranges cover exactly one period of tau (m in [0, (p-1)/k)) so every
/// element of a coset is enumerated once. The nonresidue indicator sums the
/// k-1 nontrivial cosets tau^(km+j), j = 1..k-1; for k = 2 that is the single
/// odd-exponent sum.
class CharacterSumOracle {
 public:
  static constexpr std::uint64_t kMaxPrime = 100'000;
  static constexpr double kIntegrityTolerance = 1e-6;

  explicit CharacterSumOracle(const SmallFieldTable& table);

  /// Raw (pre-rounding) value of the indicator.
  std::complex<double> raw(std::uint64_t a, std::uint64_t k, Indicator which) const;
  /// Raw value of the single-coset sum over tau^(km+j), m in [0, (p-1)/k).
  std::complex<double> raw_coset(std::uint64_t a, std::uint64_t k, std::uint64_t j) const;

  /// Rounded to {0, 1}; throws NumericalIntegrityError when the raw value
  /// is further than kIntegrityTolerance from 0 or 1.
  int evaluate(std::uint64_t a, std::uint64_t k, Indicator which) const;

  /// Sum_{s=0}^{p-1} e^(2 pi i c s / p)
  std::complex<double> orthogonality_kernel(std::uint64_t c) const { return kernel_[c % p_]; }

  const SmallFieldTable& table() const { return *table_; }

 private:
  const SmallFieldTable* table_;
  std::uint64_t p_;
  std::vector<std::complex<double>> kernel_;
};

/// Convenience wrapper that builds the oracle for one query.
int char_function_oracle(std::uint64_t a, std::uint64_t k, const SmallFieldTable& table,
                         Indicator which);

/// e^(2 pi i j / p) for j in [0, p)
std::vector<std::complex<double>> unit_roots(std::uint64_t p);

}  // namespace smallres
