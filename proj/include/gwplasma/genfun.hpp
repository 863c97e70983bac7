#pragma once

#include <cstdint>

#include "gwplasma/law.hpp"
#include "gwplasma/report.hpp"
#include "gwplasma/series.hpp"

namespace gwplasma {

// Mean grand canonical partition function  sum_N Zbar_N(beta) t^N, truncated.
struct MeanGCPF {
  TruncSeries series;
  BranchingLaw law;
};

// Coefficients from mean_z_table(law, order). order >= 1.
MeanGCPF mean_gcpf(const BranchingLaw& law, std::uint32_t order);

// Fbar_q = sum_N Zbar_N u_q^{binom(N,2)} t^N; the identity for q = 1.
TruncSeries f_bar(const BranchingLaw& law, std::uint32_t q, std::uint32_t order);

// alpha -> sum_q p_q Xi(u_q, alpha)(t/q)^q. Per-q terms run on up to
// `threads` workers.
TruncSeries gcpf_operator(const BranchingLaw& law, const TruncSeries& alpha, unsigned threads = 1);

// Residual mean_gcpf - gcpf_operator(mean_gcpf), order by order. order >= 2.
Report verify_functional_equation(const BranchingLaw& law, std::uint32_t order, unsigned threads = 1);

// Iterates from 1 + t until two successive iterates agree exactly through
// `order`. At order N >= 2 the update solves the coefficient's linear
// self-dependence:
//   alpha_N <- (Op(alpha)_N - m_N alpha_N) / (1 - m_N),  m_N = q_moment(law, N),
// so each application fixes one more order. Throws NoConvergence after
// max_iter applications.
TruncSeries fixed_point_iterate(const BranchingLaw& law, std::uint32_t order, std::uint32_t max_iter = 64,
                                unsigned threads = 1);

// One application of the solved update used by fixed_point_iterate.
TruncSeries fixed_point_step(const BranchingLaw& law, const TruncSeries& alpha, unsigned threads = 1);

// E[(1 + t/Q)^Q | Q > 1], the beta -> +infinity limit; constant coefficients.
TruncSeries beta_infinity_gcpf(const BranchingLaw& law, std::uint32_t order);

}  // namespace gwplasma
