#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gwplasma/bigrational.hpp"

namespace gwplasma {

// Product of u_q^{e_q} over a few variable indices q >= 2. The formal variable
// u_q stands for q^{-beta}. Entries are kept sorted by q with no zero exponent;
// the empty monomial is the constant 1.
class Monomial {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (q, exponent)

  Monomial() = default;

  static Monomial var(std::uint32_t q, std::uint32_t exponent = 1);
  // Accepts unsorted entries, merges repeats and drops zero exponents.
  // Throws InvalidArgument for q < 2.
  static Monomial from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::uint64_t degree() const noexcept { return degree_; }
  std::uint32_t exponent(std::uint32_t q) const noexcept;
  bool is_one() const noexcept { return entries_.empty(); }

  bool divides(const Monomial& other) const noexcept;
  Monomial operator*(const Monomial& rhs) const;
  // Precondition: divides(*this) holds for `divisor`.
  Monomial quotient(const Monomial& divisor) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Entry> entries_;
  std::uint64_t degree_ = 0;
};

// Graded lexicographic order: total degree first, ties broken
// lexicographically with lower variable indices more significant.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
  Monomial monomial;
  BigRational coef;
};

// Caches powers of u_q for repeated exact evaluation at one point.
class Substitution {
 public:
  void set(std::uint32_t q, BigRational value);
  // u_q := q^{-beta}, each value rounded to double then taken exactly.
  static Substitution at_beta(double beta, const std::vector<std::uint32_t>& variables);
  // u_q := value for every q (used for the beta = 0 specialisation u_q = 1).
  static Substitution uniform(BigRational value);

  const BigRational& power(std::uint32_t q, std::uint32_t exponent);

 private:
  std::unordered_map<std::uint32_t, std::vector<BigRational>> powers_;
  std::optional<BigRational> uniform_;
};

// Sparse multivariate polynomial with exact rational coefficients. Terms are
// stored in strictly descending grlex order and never carry a zero
// coefficient, so structural equality is mathematical equality.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(BigRational constant);

  static MultiPoly var(std::uint32_t q, std::uint32_t exponent = 1);
  static MultiPoly monomial(Monomial m, BigRational coef);
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  BigRational constant_term() const;
  // Precondition: !is_zero().
  const Term& leading_term() const { return terms_.front(); }
  std::uint64_t total_degree() const noexcept;
  std::vector<std::uint32_t> variables() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const BigRational& scalar);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const BigRational& s) { return a *= s; }
  friend MultiPoly operator*(const BigRational& s, MultiPoly a) { return a *= s; }
  MultiPoly times_monomial(const Monomial& m, const BigRational& coef) const;
  MultiPoly pow(std::uint32_t exponent) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  // Quotient when `divisor` divides this polynomial exactly, else nullopt.
  // Throws DivisionByZero for a zero divisor.
  std::optional<MultiPoly> exact_quotient(const MultiPoly& divisor) const;

  // Positive rational c such that (*this)/c has coprime integer coefficients.
  BigRational content() const;

  BigRational evaluate(Substitution& at) const;

  // "3/2*u2^2*u3 - u5 + 1"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

// Total order on polynomials used to sort denominator factors.
std::strong_ordering poly_compare(const MultiPoly& a, const MultiPoly& b) noexcept;

}  // namespace gwplasma
