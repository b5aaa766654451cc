#include "ocasync/bigint.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>


namespace ocasync {

namespace {

BigInt product_tree(const std::vector<std::uint64_t>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return 1;
  if (hi - lo <= 16) {
    BigInt acc = 1;
    for (std::size_t i = lo; i < hi; ++i) {
      mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(xs[i]));
    }
    return acc;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(xs, lo, mid) * product_tree(xs, mid, hi);
}

}  // namespace

BigInt lcm_range(std::uint64_t n) {
  if (n < 2) return 1;
  // Largest prime power p^k <= n for every prime p <= n.
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    std::uint64_t pk = p;
    while (pk <= n / p) pk *= p;
    factors.push_back(pk);
  }
  return product_tree(factors, 0, factors.size());
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 1) return b;
  if (b == 1) return a;
  if (a == b) return a;
  if (mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return a;
  if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) return b;
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

static_assert(sizeof(long) == sizeof(std::int64_t));

bool fits_int64(const BigInt& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }

std::int64_t to_int64(const BigInt& x) {
  if (!fits_int64(x)) throw std::overflow_error("integer does not fit in 64 bits");
  return mpz_get_si(x.get_mpz_t());
}

BigInt from_int64(std::int64_t x) { return BigInt(static_cast<long>(x)); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit counter overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow");
  return r;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("lcm64 expects positive arguments");
  return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace ocasync
