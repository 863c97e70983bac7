#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gwplasma/ratfn.hpp"

namespace gwplasma {

// Power series in the fugacity t truncated after t^order, with rational
// function coefficients. coeffs()[n] is the coefficient of t^n.
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order = 0) : coeffs_(order + 1) {}
  explicit TruncSeries(std::vector<RationalFn> coeffs);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<RationalFn>& coeffs() const noexcept { return coeffs_; }
  const RationalFn& operator[](std::size_t n) const { return coeffs_.at(n); }
  RationalFn& operator[](std::size_t n) { return coeffs_.at(n); }

  // 1 + t + ... up to `order`, each coefficient 1; handy for tests.
  static TruncSeries one(std::size_t order);

  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

 private:
  std::vector<RationalFn> coeffs_;
};

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_scale(const TruncSeries& a, const BigRational& s);

// Cauchy product truncated at the common order; throws OrderMismatch.
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);

// a^q by repeated squaring over series_mul; q >= 1.
TruncSeries series_pow(const TruncSeries& a, std::uint32_t q);

// t -> t/q: coefficient of t^n times q^{-n}; q >= 1.
TruncSeries series_rescale(const TruncSeries& a, std::uint32_t q);

// Coefficient of t^n times u_q^{binom(n,2)} (binom(0,2) = binom(1,2) = 0).
// For q = 1 the map is the identity (u_1 = 1).
TruncSeries xi_transform(std::uint32_t q, const TruncSeries& a);

}  // namespace gwplasma
