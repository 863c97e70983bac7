#include "gwplasma/meanrec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "gwplasma/error.hpp"
#include "gwplasma/series.hpp"

namespace gwplasma {

MeanZTable::MeanZTable(BranchingLaw law, std::vector<RationalFn> values)
    : law_(std::move(law)), values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidArgument, "a mean partition table holds at least Zbar_0");
}

namespace {

RationalFn one_minus_moment(const BranchingLaw& law, std::uint32_t n) {
  MultiPoly d = MultiPoly(BigRational(1)) - q_moment(law, n);
  if (d.is_zero()) {
    throw Error(ErrorKind::DegenerateDenominator,
                "1 - E[Q^{1-N-beta binom(N,2)}] vanishes identically at N = " + std::to_string(n));
  }
  return RationalFn(std::move(d));
}

// h_n = Zbar_n u_q^{binom(n,2)} q^{-n}
RationalFn weighted_term(const RationalFn& z, std::uint32_t q, std::uint32_t n) {
  RationalFn h = z * BigRational(1 / rational_pow(BigRational(q), n));
  if (binom2(n) > 0) h = h.times(MultiPoly::var(q, static_cast<std::uint32_t>(binom2(n))));
  return h;
}

std::vector<RationalFn> table_incremental(const BranchingLaw& law, std::uint32_t max_n) {
  std::vector<RationalFn> z{RationalFn(BigRational(1)), RationalFn(BigRational(1))};
  z.resize(std::max<std::size_t>(2, max_n + 1));
  const auto support = law.branching_support();
  // Per q: h_n and P_n = [t^n] H_q^q, where H_q = sum_n h_n t^n.
  std::map<std::uint32_t, std::vector<RationalFn>> h;
  std::map<std::uint32_t, std::vector<RationalFn>> power;
  for (auto q : support) {
    h[q] = {RationalFn(BigRational(1)), RationalFn(make_rational(1, q))};
    power[q] = {RationalFn(BigRational(1)), RationalFn(BigRational(1))};
  }
  std::vector<std::pair<const RationalFn*, const RationalFn*>> pairs;
  std::vector<RationalFn> scaled;
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    std::map<std::uint32_t, RationalFn> partial;
    RationalFn rhs;
    for (auto q : support) {
      // Terms with k = n are the compositions giving all n particles to one
      // child; they are moved to the left-hand side of the recursion.
      scaled.clear();
      scaled.reserve(n);
      pairs.clear();
      for (std::uint32_t k = 1; k < n; ++k) {
        const BigRational weight = make_rational(static_cast<long>((q + 1) * k) - static_cast<long>(n), n);
        scaled.push_back(h[q][k] * weight);
      }
      for (std::uint32_t k = 1; k < n; ++k) pairs.emplace_back(&scaled[k - 1], &power[q][n - k]);
      RationalFn part = RationalFn::sum_of_products(pairs);
      rhs += part * law.probability(q);
      partial.emplace(q, std::move(part));
    }
    z[n] = rhs / one_minus_moment(law, n);
    for (auto q : support) {
      h[q].push_back(weighted_term(z[n], q, n));
      power[q].push_back(partial[q] + h[q][n] * BigRational(q));
    }
  }
  z.resize(max_n + 1);
  return z;
}

std::vector<RationalFn> table_squaring(const BranchingLaw& law, std::uint32_t max_n) {
  std::vector<RationalFn> z{RationalFn(BigRational(1)), RationalFn(BigRational(1))};
  z.resize(std::max<std::size_t>(2, max_n + 1));
  const auto support = law.branching_support();
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    RationalFn rhs;
    for (auto q : support) {
      TruncSeries g(n);
      for (std::uint32_t k = 0; k < n; ++k) g[k] = weighted_term(z[k], q, k);
      rhs += series_pow(g, q)[n] * law.probability(q);
    }
    z[n] = rhs / one_minus_moment(law, n);
  }
  z.resize(max_n + 1);
  return z;
}

}  // namespace

MeanZTable mean_z_table(const BranchingLaw& law, std::uint32_t max_n, CompositionMethod method) {
  auto values = method == CompositionMethod::kIncrementalPower ? table_incremental(law, max_n)
                                                               : table_squaring(law, max_n);
  return MeanZTable(law, std::move(values));
}

RationalFn mean_z(const BranchingLaw& law, std::uint32_t n, CompositionMethod method) {
  return mean_z_table(law, n, method)[n];
}

double mean_z_numeric(const BranchingLaw& law, std::uint32_t n, double beta, double pole_eps) {
  return mean_z(law, n).evaluate(beta, pole_eps);
}

namespace {

// [t^n] of (g_0 + ... + g_{n-1} t^{n-1})^q for a non-negative series.
double top_coefficient_of_power(const std::vector<double>& g, std::uint32_t q, std::size_t n) {
  auto mul = [n](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  std::vector<double> base(g.begin(), g.end());
  base.resize(n + 1, 0.0);
  std::vector<double> result(n + 1, 0.0);
  result[0] = 1.0;
  while (q > 0) {
    if (q & 1U) result = mul(result, base);
    q >>= 1U;
    if (q > 0) base = mul(base, base);
  }
  return result[n];
}

}  // namespace

std::vector<double> mean_z_numeric_direct(const BranchingLaw& law, std::uint32_t max_n, double beta,
                                          double pole_eps) {
  std::vector<double> z(std::max<std::size_t>(2, max_n + 1), 0.0);
  z[0] = z[1] = 1.0;
  std::vector<std::pair<std::uint32_t, double>> probs;
  for (const auto& [q, p] : law.entries()) probs.emplace_back(q, to_double(p));
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    double rhs = 0.0;
    double moment = 0.0;
    for (const auto& [q, p] : probs) {
      const double lq = std::log(static_cast<double>(q));
      moment += p * std::exp((1.0 - n - beta * static_cast<double>(binom2(n))) * lq);
      if (q == 1) continue;
      std::vector<double> g(n);
      for (std::uint32_t k = 0; k < n; ++k) {
        g[k] = z[k] * std::exp((-static_cast<double>(k) - beta * static_cast<double>(binom2(k))) * lq);
      }
      rhs += p * top_coefficient_of_power(g, q, n);
    }
    const double denom = 1.0 - moment;
    if (std::abs(denom) <= pole_eps) {
      std::ostringstream os;
      os << "1 - E[Q^{1-N-beta binom(N,2)}] = " << denom << " at N = " << n << ", beta = " << beta;
      throw Error(ErrorKind::PoleProximity, os.str());
    }
    z[n] = rhs / denom;
  }
  z.resize(max_n + 1);
  return z;
}

namespace {

int sign_at(const MultiPoly& f, double beta) {
  Substitution at = Substitution::at_beta(beta, f.variables());
  return sgn(f.evaluate(at));
}

}  // namespace

std::optional<double> largest_negative_pole(const RationalFn& f, const PoleSearch& search) {
  if (!(search.step > 0) || !(search.beta_min < 0) || !(search.tolerance > 0)) {
    throw Error(ErrorKind::InvalidArgument, "pole search needs step > 0, beta_min < 0, tolerance > 0");
  }
  std::optional<double> best;
  const auto steps = static_cast<long>(std::ceil(-search.beta_min / search.step));
  for (const auto& fp : f.den_factors()) {
    const MultiPoly& factor = *fp.factor;
    double hi = 0.0;
    int s_hi = sign_at(factor, hi);
    for (long k = 1; k <= steps; ++k) {
      const double lo = std::max(search.beta_min, -static_cast<double>(k) * search.step);
      const int s_lo = sign_at(factor, lo);
      if (s_lo == 0 || s_hi == 0 || s_lo != s_hi) {
        double a = lo;
        double b = hi;
        if (s_lo == 0) {
          b = a;
        } else if (s_hi == 0) {
          a = b;
        } else {
          while (b - a > search.tolerance) {
            const double mid = 0.5 * (a + b);
            const int s_mid = sign_at(factor, mid);
            if (s_mid == 0) {
              a = b = mid;
            } else if (s_mid == s_lo) {
              a = mid;
            } else {
              b = mid;
            }
          }
        }
        const double root = 0.5 * (a + b);
        if (root < 0 && (!best || root > *best)) best = root;
        break;
      }
      hi = lo;
      s_hi = s_lo;
    }
  }
  return best;
}

}  // namespace gwplasma
