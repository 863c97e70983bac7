#include "gwplasma/bigrational.hpp"

#include <cctype>
#include <cmath>

#include "gwplasma/error.hpp"

namespace gwplasma {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
    throw Error(ErrorKind::ParseError, "not an exact rational \"" + std::string(text) + "\" (expected a/b)");
  }
  BigInteger n(std::string(num), 10);
  BigInteger d(std::string(den), 10);
  if (d == 0) {
    throw Error(ErrorKind::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  }
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const BigRational& value) { return value.get_str(10); }

BigRational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "non-finite value has no rational form");
  }
  return BigRational(value);
}

double to_double(const BigRational& value) {
  // mpq_get_d truncates; go through the quotient with round-to-nearest when
  // both parts fit, which covers every value this library produces.
  const double n = value.get_num().get_d();
  const double d = value.get_den().get_d();
  if (std::isfinite(n) && std::isfinite(d) && std::abs(n) < 0x1p53 && d < 0x1p53) return n / d;
  return value.get_d();
}

BigRational rational_pow(const BigRational& base, std::uint64_t exponent) {
  BigRational result(1);
  BigRational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

BigRational factorial(std::uint32_t n) {
  BigInteger f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return BigRational(f);
}

}  // namespace gwplasma
