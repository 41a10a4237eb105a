#include "smallres/bigmod.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "smallres/errors.hpp"

namespace smallres {

namespace {

constexpr std::array<unsigned, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Jaeschke: bases 2..17 decide every n below this bound.
constexpr std::uint64_t kMillerRabinDeterministicBound = 341'550'071'728'321ULL;

bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

void reduce(BigInt& x, const BigInt& n) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); }

void halve_mod(BigInt& x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  x >>= 1;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace

BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus < 2) throw DomainError("mod_pow: modulus must be >= 2");
  if (exponent < 0) throw DomainError("mod_pow: exponent must be >= 0");
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("mod_pow: modulus must be >= 2");
  std::uint64_t result = 1;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, modulus);
    exponent >>= 1;
    base = mul_mod(base, base, modulus);
  }
  return result;
}

int jacobi(const BigInt& n_in, const BigInt& m_in) {
  if (m_in < 3 || mpz_even_p(m_in.get_mpz_t()))
    throw DomainError("jacobi: modulus must be odd and >= 3");
  BigInt n = n_in;
  BigInt m = m_in;
  reduce(n, m);
  int t = 1;
  while (n != 0) {
    const auto twos = mpz_scan1(n.get_mpz_t(), 0);
    if (twos > 0) {
      n >>= twos;
      const unsigned long r = mpz_fdiv_ui(m.get_mpz_t(), 8);
      if ((twos & 1) && (r == 3 || r == 5)) t = -t;
    }
    swap(n, m);
    if (mpz_fdiv_ui(n.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) t = -t;
    reduce(n, m);
  }
  return m == 1 ? t : 0;
}

int jacobi(std::int64_t n_in, std::uint64_t m) {
  if (m < 3 || (m & 1) == 0) throw DomainError("jacobi: modulus must be odd and >= 3");
  std::uint64_t n;
  if (n_in >= 0) {
    n = static_cast<std::uint64_t>(n_in) % m;
  } else {
    // -(n_in) without overflow at INT64_MIN
    const std::uint64_t mag = static_cast<std::uint64_t>(-(n_in + 1)) + 1;
    n = (m - mag % m) % m;
  }
  int t = 1;
  while (n != 0) {
    while ((n & 1) == 0) {
      n >>= 1;
      const std::uint64_t r = m & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(n, m);
    if ((n & 3) == 3 && (m & 3) == 3) t = -t;
    n %= m;
  }
  return m == 1 ? t : 0;
}

bool strong_probable_prime(const BigInt& n, unsigned long a) {
  BigInt d = n - 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  const BigInt n_minus_1 = n - 1;
  BigInt x = mod_pow(BigInt(a), d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x;
    reduce(x, n);
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool strong_lucas_probable_prime(const BigInt& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  // Selfridge: first D in 5, -7, 9, -11, ... with (D|n) = -1.
  long D = 5;
  for (;;) {
    const int j = jacobi(BigInt(D), n);
    if (j == -1) break;
    if (j == 0 && BigInt(std::labs(D)) != n) return false;
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const long Q = (1 - D) / 4;

  BigInt d = n + 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  BigInt big_d(D);
  BigInt big_q(Q);
  reduce(big_d, n);
  reduce(big_q, n);

  BigInt u = 1;
  BigInt v = 1;  // P = 1
  BigInt qk = big_q;
  BigInt tmp;
  const auto bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (auto i = static_cast<long>(bits) - 2; i >= 0; --i) {
    u = u * v;
    reduce(u, n);
    v = v * v - 2 * qk;
    reduce(v, n);
    qk = qk * qk;
    reduce(qk, n);
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      tmp = u + v;
      v = big_d * u + v;
      u = tmp;
      reduce(u, n);
      reduce(v, n);
      halve_mod(u, n);
      halve_mod(v, n);
      qk = qk * big_q;
      reduce(qk, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = v * v - 2 * qk;
    reduce(v, n);
    if (v == 0) return true;
    qk = qk * qk;
    reduce(qk, n);
  }
  return false;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  if (n < kMillerRabinDeterministicBound) {
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17}) {
      if (!strong_probable_prime_u64(n, a)) return false;
    }
    return true;
  }
  if (!strong_probable_prime_u64(n, 2)) return false;
  BigInt big;
  mpz_import(big.get_mpz_t(), 1, -1, sizeof n, 0, 0, &n);
  return strong_lucas_probable_prime(big);
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (std::uint64_t p = 3; p < 1000; p += 2) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  return strong_probable_prime(n, 2) && strong_lucas_probable_prime(n);
}

std::uint64_t integer_root(std::uint64_t n, unsigned k) {
  if (k == 0) throw DomainError("integer_root: k must be >= 1");
  if (k == 1 || n < 2) return n;
  if (k >= 64) return 1;
  auto fits = [&](std::uint64_t r) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= r;
      if (acc > n) return false;
    }
    return true;
  };
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  for (unsigned k = 1; k < 64; ++k) {
    const std::uint64_t r = integer_root(n, k);
    if (r < 2) break;
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= r;
    if (acc == n && is_prime(r)) return r;
  }
  return 0;
}

double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
  const std::uint64_t base = prime_power_base(n);
  return base == 0 ? 0.0 : std::log(static_cast<double>(base));
}

Factorization factor_trial(std::uint64_t n) {
  Factorization out;
  if (n < 2) return out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_totient(std::uint64_t q) {
  if (q == 0) throw DomainError("euler_totient: q must be >= 1");
  std::uint64_t phi = q;
  for (const auto& [r, e] : factor_trial(q)) phi = phi / r * (r - 1);
  return phi;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi,
                                          std::uint64_t budget) {
  if (hi > budget) throw ResourceError("prime sieve limit exceeds the configured budget");
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);

  const std::uint64_t root = integer_root(hi, 2);
  const std::vector<std::uint64_t> base = simple_sieve(root);

  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<char> composite(kSegment);
  for (std::uint64_t low = lo; low <= hi; low += kSegment) {
    const std::uint64_t high = std::min(hi, low + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) composite[j - low] = 1;
    }
    for (std::uint64_t n = low; n <= high; ++n) {
      if (!composite[n - low]) out.push_back(n);
    }
    if (high == hi) break;
  }
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t budget) {
  return primes_between(2, x, budget);
}

PrimeCursor::PrimeCursor(std::uint64_t start) : low_(std::max<std::uint64_t>(start, 2)) {}

void PrimeCursor::refill() {
  block_.clear();
  pos_ = 0;
  while (block_.empty()) {
    block_ = primes_between(low_, low_ + block_size_ - 1, std::numeric_limits<std::uint64_t>::max());
    low_ += block_size_;
    block_size_ = std::min<std::uint64_t>(block_size_ * 2, 1u << 18);
  }
}

std::uint64_t PrimeCursor::next() {
  if (pos_ >= block_.size()) refill();
  return block_[pos_++];
}

std::uint64_t multiplicative_order(std::uint64_t u, std::uint64_t p,
                                   const Factorization& p_minus_1) {
  if (p < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  u %= p;
  if (gcd(u, p) != 1) throw DomainError("multiplicative_order: gcd(u, p) != 1");
  std::uint64_t product = 1;
  for (const auto& [r, e] : p_minus_1) {
    for (unsigned i = 0; i < e; ++i) product *= r;
  }
  if (product != p - 1) throw DomainError("multiplicative_order: incomplete factorization of p-1");
  std::uint64_t order = p - 1;
  for (const auto& [r, e] : p_minus_1) {
    for (unsigned i = 0; i < e; ++i) {
      if (mod_pow(u, order / r, p) != 1) break;
      order /= r;
    }
  }
  return order;
}

BigInt multiplicative_order(const BigInt& u_in, const BigInt& p,
                            const BigFactorization& p_minus_1) {
  if (p < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  BigInt u = u_in;
  reduce(u, p);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
  if (g != 1) throw DomainError("multiplicative_order: gcd(u, p) != 1");
  BigInt product = 1;
  for (const auto& [r, e] : p_minus_1) {
    for (unsigned i = 0; i < e; ++i) product *= r;
  }
  if (product != p - 1) throw DomainError("multiplicative_order: incomplete factorization of p-1");
  BigInt order = p - 1;
  for (const auto& [r, e] : p_minus_1) {
    for (unsigned i = 0; i < e; ++i) {
      if (mod_pow(u, order / r, p) != 1) break;
      order /= r;
    }
  }
  return order;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [r, e] : f) {
    const std::size_t n = out.size();
    std::uint64_t power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= r;
      for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double log_big(const BigInt& n) {
  if (n <= 0) throw DomainError("log_big: argument must be positive");
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

OddPrimeContext OddPrimeContext::make(const BigInt& p, bool allow_small) {
  if (p < 3 || mpz_even_p(p.get_mpz_t())) throw DomainError("modulus must be an odd prime");
  if (!is_prime(p)) throw DomainError("modulus " + to_string(p) + " is not prime");
  if (!allow_small && p < 17)
    throw DomainError("modulus must be >= 17 (log log p > 1) outside test mode");
  OddPrimeContext ctx;
  ctx.p_ = p;
  ctx.p_minus_1_ = p - 1;
  ctx.log_p_ = log_big(p);
  ctx.loglog_p_ = std::log(ctx.log_p_);
  ctx.fits_u64_ = mpz_fits_ulong_p(p.get_mpz_t()) != 0;
  ctx.p_u64_ = ctx.fits_u64_ ? static_cast<std::uint64_t>(p.get_ui()) : 0;
  return ctx;
}

OddPrimeContext OddPrimeContext::make(std::string_view decimal, bool allow_small) {
  BigInt p;
  if (p.set_str(std::string(decimal), 10) != 0) throw UsageError("not a decimal integer");
  return make(p, allow_small);
}

double OddPrimeContext::bound_x(double exponent) const {
  return log_p_ * std::pow(loglog_p_, exponent);
}

bool OddPrimeContext::divides(std::uint64_t n) const {
  if (fits_u64_) return n % p_u64_ == 0;
  return n == 0;
}

bool OddPrimeContext::k_divides_order(std::uint64_t k) const {
  if (k == 0) return false;
  return mpz_divisible_ui_p(p_minus_1_.get_mpz_t(), k) != 0;
}

ResidueClass ResidueClass::make(std::uint64_t a, std::uint64_t q) {
  if (q == 0) throw DomainError("residue class modulus q must be >= 1");
  if (q == 1) {
    if (a != 0) throw DomainError("the trivial class modulo 1 is written a = 0");
    return ResidueClass(0, 1);
  }
  if (a < 1 || a >= q) throw DomainError("residue class requires 1 <= a < q");
  if (gcd(a, q) != 1) throw DomainError("residue class requires gcd(a, q) = 1");
  return ResidueClass(a, q);
}

std::vector<ResidueClass> classes_mod(std::uint64_t q) {
  if (q == 0) throw DomainError("classes_mod: q must be >= 1");
  if (q == 1) return {ResidueClass::trivial()};
  std::vector<ResidueClass> out;
  for (std::uint64_t a = 1; a < q; ++a) {
    if (gcd(a, q) == 1) out.push_back(ResidueClass::make(a, q));
  }
  return out;
}

}  // namespace smallres
