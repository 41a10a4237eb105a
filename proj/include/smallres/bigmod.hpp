#pragma once

/**
 * @file bigmod.hpp
 * @brief Modular arithmetic and prime machinery over arbitrary precision.
 *
 * Every routine has a 64-bit overload for the desk-scale sweeps, where
 * calling into GMP per candidate would dominate the runtime, and a BigInt
 * overload for the 24-48 digit moduli.
 */

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace smallres {

using BigInt = mpz_class;

/// (prime, exponent) pairs in ascending prime order.
using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;
using BigFactorization = std::vector<std::pair<BigInt, unsigned>>;

BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

/// Jacobi symbol (n|m) for odd m >= 3. Throws DomainError otherwise.
int jacobi(const BigInt& n, const BigInt& m);
int jacobi(std::int64_t n, std::uint64_t m);

/// Deterministic Miller-Rabin below 3.4e14, Baillie-PSW above.
bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

/// Strong probable-prime test to base `a` (n odd, n > a).
bool strong_probable_prime(const BigInt& n, unsigned long a);
/// Strong Lucas probable-prime test with Selfridge's parameter choice.
bool strong_lucas_probable_prime(const BigInt& n);

/// floor(n^(1/k)).
std::uint64_t integer_root(std::uint64_t n, unsigned k);

/// If n = r^j for a prime r and j >= 1, returns r; otherwise 0.
std::uint64_t prime_power_base(std::uint64_t n);

/// Lambda(n): log r when n is a power of the prime r, else 0.
double von_mangoldt(std::uint64_t n);

/// Trial division; fine for the moduli this library is used with.
Factorization factor_trial(std::uint64_t n);

std::uint64_t euler_totient(std::uint64_t q);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

inline constexpr std::uint64_t kDefaultSieveBudget = 1'000'000'000ULL;

/// All primes <= x, ascending (segmented sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t x,
                                        std::uint64_t budget = kDefaultSieveBudget);

/// Primes in [lo, hi], ascending.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi,
                                          std::uint64_t budget = kDefaultSieveBudget);

/// Ascending prime enumeration without an upper bound fixed in advance.
class PrimeCursor {
 public:
  explicit PrimeCursor(std::uint64_t start = 2);
  /// The next prime >= the previous return value + 1 (first call: >= start).
  std::uint64_t next();

 private:
  void refill();

  std::uint64_t low_;
  // Grows geometrically; most searches stop within the first few hundred.
  std::uint64_t block_size_ = 1024;
  std::vector<std::uint64_t> block_;
  std::size_t pos_ = 0;
};

/// Least t > 0 with u^t = 1 (mod p), given the full factorization of p-1.
std::uint64_t multiplicative_order(std::uint64_t u, std::uint64_t p,
                                   const Factorization& p_minus_1);
BigInt multiplicative_order(const BigInt& u, const BigInt& p,
                            const BigFactorization& p_minus_1);

/// All positive divisors of the factored number, ascending.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// log of a positive BigInt without overflowing double.
double log_big(const BigInt& n);

std::string to_string(const BigInt& n);

/// An odd prime with cached logarithms.
class OddPrimeContext {
 public:
  /// Validates primality. Outside test mode p must be >= 17 so that
  /// log log p > 1.
  static OddPrimeContext make(const BigInt& p, bool allow_small = false);
  static OddPrimeContext make(std::string_view decimal, bool allow_small = false);

  const BigInt& p() const { return p_; }
  const BigInt& p_minus_1() const { return p_minus_1_; }
  double log_p() const { return log_p_; }
  double loglog_p() const { return loglog_p_; }
  /// (log p)(log log p)^exponent
  double bound_x(double exponent) const;

  bool fits_u64() const { return fits_u64_; }
  std::uint64_t p_u64() const { return p_u64_; }

  /// n mod p == 0
  bool divides(std::uint64_t n) const;
  /// k | p - 1
  bool k_divides_order(std::uint64_t k) const;

 private:
  OddPrimeContext() = default;

  BigInt p_;
  BigInt p_minus_1_;
  double log_p_ = 0;
  double loglog_p_ = 0;
  bool fits_u64_ = false;
  std::uint64_t p_u64_ = 0;
};

/// The progression a + q*m. q = 1 is the trivial class and carries a = 0;
/// otherwise 1 <= a < q with gcd(a, q) = 1.
class ResidueClass {
 public:
  static ResidueClass make(std::uint64_t a, std::uint64_t q);
  static ResidueClass trivial() { return ResidueClass(0, 1); }

  std::uint64_t a() const { return a_; }
  std::uint64_t q() const { return q_; }
  bool contains(std::uint64_t n) const { return n % q_ == a_; }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

 private:
  ResidueClass(std::uint64_t a, std::uint64_t q) : a_(a), q_(q) {}
  std::uint64_t a_;
  std::uint64_t q_;
};

/// Every valid class modulo q, ascending in a.
std::vector<ResidueClass> classes_mod(std::uint64_t q);

}  // namespace smallres
