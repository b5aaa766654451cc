#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace ocasync {

using BigInt = mpz_class;

// lcm(1, 2, ..., n); lcm_range(0) == 1.
BigInt lcm_range(std::uint64_t n);

BigInt lcm(const BigInt& a, const BigInt& b);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exponent);

std::size_t bit_length(const BigInt& x);
std::string to_decimal(const BigInt& x);

bool fits_int64(const BigInt& x);
// Throws std::overflow_error when x does not fit.
std::int64_t to_int64(const BigInt& x);
BigInt from_int64(std::int64_t x);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace ocasync
