#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwplasma/bigrational.hpp"
#include "gwplasma/poly.hpp"

namespace gwplasma {

// Offspring distribution of the branching process: P{Q = q} = p_q over a
// finite support. Validated on construction: probabilities in (0, 1] summing
// to exactly 1, no q = 0, distinct q, and not the degenerate law {1: 1}.
class BranchingLaw {
 public:
  struct Entry {
    std::uint32_t q;
    BigRational p;
  };

  // Throws ProbabilitySumNotOne, ZeroChildrenForbidden, DegenerateLaw,
  // DuplicateSupport, or InvalidArgument (p outside (0, 1]).
  explicit BranchingLaw(std::vector<Entry> entries);

  // Entries sorted by ascending q.
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  BigRational probability(std::uint32_t q) const;
  std::uint32_t max_q() const noexcept { return entries_.back().q; }
  // Support values q >= 2, i.e. the variables u_q the law's functions use.
  std::vector<std::uint32_t> branching_support() const;

  // "{2:1/2, 3:1/2}"
  std::string to_string() const;

  friend bool operator==(const BranchingLaw&, const BranchingLaw&);

 private:
  std::vector<Entry> entries_;
};

// Regular q-nary law {q: 1}.
BranchingLaw regular_law(std::uint32_t q);

// E[Q^{1-N} u_Q^{binom(N,2)}] = sum_q p_q q^{1-N} u_q^{binom(N,2)}, with u_1 = 1.
// Precondition: N >= 1 (InvalidArgument otherwise).
MultiPoly q_moment(const BranchingLaw& law, std::uint32_t n);

// E[Q] exactly.
BigRational mean_q(const BranchingLaw& law);

// {"law": [{"q": 2, "p": "1/2"}, ...]}; probabilities must be rational
// strings. Throws ParseError on malformed input and the law errors above.
BranchingLaw parse_law_json(const std::string& text);
BranchingLaw load_law_file(const std::string& path);
std::string law_to_json(const BranchingLaw& law);

}  // namespace gwplasma
