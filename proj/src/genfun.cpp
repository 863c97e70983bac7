#include "gwplasma/genfun.hpp"

#include <algorithm>
#include <future>
#include <utility>

#include "gwplasma/error.hpp"
#include "gwplasma/meanrec.hpp"

namespace gwplasma {

MeanGCPF mean_gcpf(const BranchingLaw& law, std::uint32_t order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "generating function order must be >= 1");
  const MeanZTable table = mean_z_table(law, order);
  return {TruncSeries(table.values()), law};
}

TruncSeries f_bar(const BranchingLaw& law, std::uint32_t q, std::uint32_t order) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "f_bar needs q >= 1");
  return xi_transform(q, mean_gcpf(law, order).series);
}

namespace {

TruncSeries operator_term(std::uint32_t q, const TruncSeries& alpha) {
  return series_pow(series_rescale(xi_transform(q, alpha), q), q);
}

}  // namespace

TruncSeries gcpf_operator(const BranchingLaw& law, const TruncSeries& alpha, unsigned threads) {
  const auto& entries = law.entries();
  std::vector<TruncSeries> terms(entries.size());
  if (threads <= 1 || entries.size() == 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) terms[i] = operator_term(entries[i].q, alpha);
  } else {
    // Batches of at most `threads` concurrent per-q terms; summed in law order.
    for (std::size_t start = 0; start < entries.size(); start += threads) {
      std::vector<std::future<TruncSeries>> jobs;
      const std::size_t stop = std::min(entries.size(), start + threads);
      for (std::size_t i = start; i < stop; ++i) {
        jobs.push_back(std::async(std::launch::async, operator_term, entries[i].q, std::cref(alpha)));
      }
      for (std::size_t i = start; i < stop; ++i) terms[i] = jobs[i - start].get();
    }
  }
  TruncSeries out(alpha.order());
  for (std::size_t i = 0; i < entries.size(); ++i) out = series_add(out, series_scale(terms[i], entries[i].p));
  return out;
}

Report verify_functional_equation(const BranchingLaw& law, std::uint32_t order, unsigned threads) {
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "functional equation check needs order >= 2");
  const TruncSeries z = mean_gcpf(law, order).series;
  const TruncSeries residual = series_sub(z, gcpf_operator(law, z, threads));
  Report report;
  report.name = "functional_equation";
  for (std::uint32_t n = 0; n <= order; ++n) report.add_residual(n, residual[n]);
  report.details = {{"law", law.to_string()}, {"order", order}};
  return report;
}

namespace {

// m_N = q_moment(law, N) and 1 / (1 - m_N) for 2 <= N <= order.
struct SolvedUpdate {
  std::vector<MultiPoly> moment;
  std::vector<RationalFn> scale;

  SolvedUpdate(const BranchingLaw& law, std::size_t order) : moment(order + 1), scale(order + 1) {
    for (std::uint32_t n = 2; n <= order; ++n) {
      moment[n] = q_moment(law, n);
      const MultiPoly d = MultiPoly(BigRational(1)) - moment[n];
      if (d.is_zero()) {
        throw Error(ErrorKind::DegenerateDenominator, "1 - q_moment vanishes at N = " + std::to_string(n));
      }
      scale[n] = RationalFn(BigRational(1)) / RationalFn(d);
    }
  }

  TruncSeries apply(const BranchingLaw& law, const TruncSeries& alpha, unsigned threads) const {
    const TruncSeries image = gcpf_operator(law, alpha, threads);
    TruncSeries next(alpha.order());
    next[0] = alpha[0];
    if (alpha.order() >= 1) next[1] = alpha[1];
    for (std::uint32_t n = 2; n <= alpha.order(); ++n) {
      next[n] = (image[n] - alpha[n].times(moment[n])) * scale[n];
    }
    return next;
  }
};

}  // namespace

TruncSeries fixed_point_step(const BranchingLaw& law, const TruncSeries& alpha, unsigned threads) {
  return SolvedUpdate(law, alpha.order()).apply(law, alpha, threads);
}

TruncSeries fixed_point_iterate(const BranchingLaw& law, std::uint32_t order, std::uint32_t max_iter,
                                unsigned threads) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "fixed point order must be >= 1");
  const SolvedUpdate update(law, order);
  TruncSeries alpha(order);
  alpha[0] = RationalFn(BigRational(1));
  alpha[1] = RationalFn(BigRational(1));
  for (std::uint32_t it = 0; it < max_iter; ++it) {
    TruncSeries next = update.apply(law, alpha, threads);
    if (next == alpha) return alpha;
    alpha = std::move(next);
  }
  throw Error(ErrorKind::NoConvergence,
              "fixed point iteration did not stabilize within " + std::to_string(max_iter) + " applications");
}

TruncSeries beta_infinity_gcpf(const BranchingLaw& law, std::uint32_t order) {
  const BigRational p1 = law.probability(1);
  const BigRational norm = 1 / (1 - p1);
  std::vector<BigRational> c(order + 1, BigRational(0));
  for (const auto& [q, p] : law.entries()) {
    if (q == 1) continue;
    // (1 + t/q)^q = sum_n binom(q, n) q^{-n} t^n
    BigInteger binom = 1;
    for (std::uint32_t n = 0; n <= std::min(order, q); ++n) {
      if (n > 0) binom = binom * (q - n + 1) / n;
      c[n] += p * norm * BigRational(binom) / rational_pow(BigRational(q), n);
    }
  }
  TruncSeries out(order);
  for (std::uint32_t n = 0; n <= order; ++n) {
    c[n].canonicalize();
    out[n] = RationalFn(c[n]);
  }
  return out;
}

}  // namespace gwplasma
