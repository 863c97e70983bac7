#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwplasma/law.hpp"
#include "gwplasma/ratfn.hpp"
#include "gwplasma/report.hpp"

namespace gwplasma {

// Energy cost E_n of putting n particles in the glued subtree; E_0 = 0.
class EnergyCost {
 public:
  enum class Kind { kLinear, kPairLog, kExplicit };

  static EnergyCost zero() { return linear(BigRational(0)); }
  // E_n = c n
  static EnergyCost linear(BigRational c);
  // E_n = binom(n, 2) log(base); base > 0.
  static EnergyCost pair_log(BigRational base);
  // E_1, E_2, ... listed; E_n for n past the list throws InvalidArgument.
  static EnergyCost explicit_list(std::vector<BigRational> values);
  // "zero", "linear:<c>", "pairlog:<base>", "list:<E1>,<E2>,..." with
  // rational-string parameters; throws ParseError.
  static EnergyCost parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double energy(std::uint32_t n) const;
  // e^{-beta E_n}
  double weight(std::uint32_t n, double beta) const;
  // True when every e^{-beta E_n} is a monomial in the u variables: all costs
  // zero, or pair_log with an integer base >= 2.
  bool exact_supported() const;
  // e^{-beta E_n} as u_m^{binom(n,2)} (or 1); throws UnsupportedExactCost.
  MultiPoly exact_weight(std::uint32_t n) const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::kLinear;
  BigRational param_ = 0;
  std::vector<BigRational> values_;
};

// Trees T and P joined under a new root. Configurations with n particles in
// P carry weight rho^n e^{-beta E_n} Zbar_{n,P} Zbar_{N-n,T}; the common
// 2^N of the measure normalization is dropped. rho = occupancy_scale is 1 for
// the glued construction as displayed and 1/q to recover the regular-tree
// weights q^{-n - beta binom(n,2)}.
struct GluedSystem {
  BranchingLaw law_t;
  BranchingLaw law_p;
  EnergyCost costs;
  std::uint32_t n = 1;
  BigRational occupancy_scale = 1;
};

// Sum_{n=0}^{N} (N/(q+1) - n) q^{-n} u_q^{binom(n,2)} Z_n Z_{N-n} for the
// regular law {q: 1}, for each N <= n_max; residual index = N.
Report verify_regular_quadratic(std::uint32_t q, std::uint32_t n_max);

// Z_q(t) - F_q(t/q)^q coefficientwise through `order` for {q: 1}.
Report verify_q_power_identity(std::uint32_t q, std::uint32_t order);

// E[N_P] = sum n w_n Zbar_{n,P} Zbar_{N-n,T} / sum w_n Zbar_{n,P} Zbar_{N-n,T}.
// Numeric version runs the mean recursion in doubles; throws PoleProximity.
double glued_occupation(const GluedSystem& sys, double beta);
// Exact rational function in the u variables; throws UnsupportedExactCost.
RationalFn glued_occupation_exact(const GluedSystem& sys);

// Sum_n (E[N_P] - n) w_n Zbar_{n,P} Zbar_{N-n,T}. Exact when the costs allow
// it (residual must vanish identically), otherwise numeric at beta with pass
// iff |sum| <= 1e-10 * sum |terms|.
Report verify_mean_quadratic(const GluedSystem& sys, double beta);

struct ConjectureParams {
  double beta = 1.0;
  std::uint32_t n = 4;
  std::uint64_t samples = 1000;
  std::uint32_t depth = 8;
  std::uint64_t seed = 42;
};

// Compares E[N_P] under E_n = binom(n,2) log E[Q] with N/(E[Q]+1): from mean
// partition functions with occupancy scale 1/E[Q] and 1, and as a Monte Carlo
// average of the per-tree-pair occupation. Observational: pass is always true.
Report conjecture_experiment(const BranchingLaw& law, const ConjectureParams& params);

}  // namespace gwplasma
