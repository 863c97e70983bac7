#include "gwplasma/series.hpp"

#include <optional>
#include <string>
#include <utility>

#include "gwplasma/error.hpp"

namespace gwplasma {

TruncSeries::TruncSeries(std::vector<RationalFn> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "a truncated series needs at least one coefficient");
}

TruncSeries TruncSeries::one(std::size_t order) {
  return TruncSeries(std::vector<RationalFn>(order + 1, RationalFn(BigRational(1))));
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) return false;
  for (std::size_t n = 0; n <= a.order(); ++n) {
    if (!(a[n] == b[n])) return false;
  }
  return true;
}

namespace {

void require_same_order(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorKind::OrderMismatch,
                "series orders differ: " + std::to_string(a.order()) + " vs " + std::to_string(b.order()));
  }
}

}  // namespace

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  TruncSeries out(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] + b[n];
  return out;
}

TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  TruncSeries out(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] - b[n];
  return out;
}

TruncSeries series_scale(const TruncSeries& a, const BigRational& s) {
  TruncSeries out(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] * s;
  return out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  const std::size_t order = a.order();
  TruncSeries out(order);
  std::vector<std::pair<const RationalFn*, const RationalFn*>> terms;
  for (std::size_t n = 0; n <= order; ++n) {
    terms.clear();
    for (std::size_t k = 0; k <= n; ++k) terms.emplace_back(&a[k], &b[n - k]);
    out[n] = RationalFn::sum_of_products(terms);
  }
  return out;
}

TruncSeries series_pow(const TruncSeries& a, std::uint32_t q) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "series_pow needs q >= 1");
  TruncSeries base = a;
  std::optional<TruncSeries> result;
  while (true) {
    if (q & 1U) result = result ? series_mul(*result, base) : base;
    q >>= 1U;
    if (q == 0) break;
    base = series_mul(base, base);
  }
  return *result;
}

TruncSeries series_rescale(const TruncSeries& a, std::uint32_t q) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "series_rescale needs q >= 1");
  TruncSeries out = a;
  const BigRational inv = make_rational(1, q);
  BigRational factor(1);
  for (std::size_t n = 0; n <= a.order(); ++n) {
    out[n] = a[n] * factor;
    factor *= inv;
  }
  return out;
}

TruncSeries xi_transform(std::uint32_t q, const TruncSeries& a) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "xi_transform needs q >= 1");
  if (q == 1) return a;
  TruncSeries out = a;
  for (std::size_t n = 2; n <= a.order(); ++n) {
    out[n] = a[n].times(MultiPoly::var(q, static_cast<std::uint32_t>(binom2(n))));
  }
  return out;
}

}  // namespace gwplasma
