#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gwplasma/law.hpp"
#include "gwplasma/ratfn.hpp"

namespace gwplasma {

// How the composition sum  sum_{N_1+..+N_q = N, N_k < N} prod_k h_{N_k}
// (h_n = Zbar_n u_q^{binom(n,2)} q^{-n}) is extracted as [t^N] G_q(t)^q.
enum class CompositionMethod {
  // Coefficients of G_q^q are carried along in N with the power-series
  // power recurrence  n P_n = sum_{k=1}^{n} ((q+1)k - n) h_k P_{n-k}.
  kIncrementalPower,
  // G_q is rebuilt for every N and raised to the q-th power by series_pow.
  kRepeatedSquaring,
};

// Mean canonical partition functions Zbar_0..Zbar_{max_n} of one law.
class MeanZTable {
 public:
  MeanZTable(BranchingLaw law, std::vector<RationalFn> values);

  const BranchingLaw& law() const noexcept { return law_; }
  const std::vector<RationalFn>& values() const noexcept { return values_; }
  std::uint32_t max_n() const noexcept { return static_cast<std::uint32_t>(values_.size() - 1); }
  const RationalFn& operator[](std::uint32_t n) const { return values_.at(n); }

 private:
  BranchingLaw law_;
  std::vector<RationalFn> values_;
};

// Throws DegenerateDenominator if 1 - q_moment(law, N) vanishes identically.
MeanZTable mean_z_table(const BranchingLaw& law, std::uint32_t max_n,
                        CompositionMethod method = CompositionMethod::kIncrementalPower);

RationalFn mean_z(const BranchingLaw& law, std::uint32_t n,
                  CompositionMethod method = CompositionMethod::kIncrementalPower);

// Double-precision Zbar_N(beta) through the exact rational function.
double mean_z_numeric(const BranchingLaw& law, std::uint32_t n, double beta,
                      double pole_eps = kDefaultPoleEpsilon);

// Zbar_0..Zbar_{max_n} at one beta, running the recursion directly in
// doubles. Meant for large N where the exact functions get too big.
// Throws PoleProximity when some 1 - E[Q^{1-N-beta binom(N,2)}] is within
// pole_eps of zero.
std::vector<double> mean_z_numeric_direct(const BranchingLaw& law, std::uint32_t max_n, double beta,
                                          double pole_eps = kDefaultPoleEpsilon);

struct PoleSearch {
  double beta_min = -8.0;
  double step = 1e-2;
  double tolerance = 1e-9;
};

// Largest beta* < 0 where some denominator factor of f changes sign, scanning
// from 0 down to beta_min and refining by bisection. nullopt when none is
// found on the grid.
std::optional<double> largest_negative_pole(const RationalFn& f, const PoleSearch& search = {});

}  // namespace gwplasma
