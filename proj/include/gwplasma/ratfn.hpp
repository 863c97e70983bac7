#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gwplasma/poly.hpp"

namespace gwplasma {

inline constexpr double kDefaultPoleEpsilon = 1e-12;

// Quotient of multivariate polynomials in the u_q.
//
// The denominator is kept as a product of factor powers rather than one
// expanded polynomial. Each factor is a primitive integer polynomial with a
// positive grlex-leading coefficient, so the expanded denominator is too; all
// scalars live in the numerator. Sums take the factorwise LCM of the
// denominators and cancellation is attempted by exact trial division of the
// numerator by each known factor. No multivariate gcd is ever computed, so two
// equal functions may differ in representation: equality is decided by
// cross-multiplication.
class RationalFn {
 public:
  struct FactorPower {
    std::shared_ptr<const MultiPoly> factor;
    std::uint32_t exponent = 0;
  };

  RationalFn() = default;
  explicit RationalFn(BigRational constant);
  explicit RationalFn(MultiPoly numerator);
  // Throws DivisionByZero when `denominator` is the zero polynomial.
  static RationalFn quotient(MultiPoly numerator, const MultiPoly& denominator);

  const MultiPoly& num() const noexcept { return num_; }
  // Expanded denominator.
  MultiPoly den() const;
  const std::vector<FactorPower>& den_factors() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.empty(); }
  std::vector<std::uint32_t> variables() const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  // Throws DivisionByZero when b is the zero function.
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const BigRational& s);
  friend RationalFn operator*(const BigRational& s, const RationalFn& a) { return a * s; }
  RationalFn times(const MultiPoly& p) const;
  RationalFn& operator+=(const RationalFn& b) { return *this = *this + b; }
  RationalFn& operator-=(const RationalFn& b) { return *this = *this - b; }
  RationalFn& operator*=(const RationalFn& b) { return *this = *this * b; }

  // Sum of pairwise products, brought over one common denominator and
  // reduced once at the end.
  static RationalFn sum_of_products(std::span<const std::pair<const RationalFn*, const RationalFn*>> terms);

  friend bool operator==(const RationalFn& a, const RationalFn& b);

  // Exact value at a point; throws DivisionByZero when the denominator vanishes.
  BigRational evaluate_exact(Substitution& at) const;
  // Value at u_q := q^{-beta}. The u_q are rounded to double once, the
  // polynomials are then evaluated exactly and the quotient is rounded.
  // Throws PoleProximity when |den(beta)| <= pole_eps.
  double evaluate(double beta, double pole_eps = kDefaultPoleEpsilon) const;
  // Expanded denominator value at u_q := q^{-beta}.
  double den_value(double beta) const;

  std::string to_string() const;

 private:
  void reduce();

  MultiPoly num_;
  std::vector<FactorPower> den_;
};

}  // namespace gwplasma
