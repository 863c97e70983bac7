#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gwplasma {

// Arbitrary-precision rationals. mpq_class keeps values canonical (reduced,
// positive denominator) after every arithmetic operation.
using BigInteger = mpz_class;
using BigRational = mpq_class;

// n/d in canonical form; d must be non-zero.
inline BigRational make_rational(long n, long d) {
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

// Parses "a/b" or "a" (optional leading '-'). Decimal points, exponents and
// zero denominators are rejected with ErrorKind::ParseError.
BigRational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string format_rational(const BigRational& value);

// Exact conversion of a finite double (every double is a dyadic rational).
BigRational rational_from_double(double value);

double to_double(const BigRational& value);

BigRational rational_pow(const BigRational& base, std::uint64_t exponent);

BigRational factorial(std::uint32_t n);

inline std::uint64_t binom2(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace gwplasma
