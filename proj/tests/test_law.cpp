#include "doctest.h"
#include "gwplasma/error.hpp"
#include "gwplasma/law.hpp"

using namespace gwplasma;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_law_json(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("law was accepted: " << text);
  return ErrorKind::InvalidArgument;
}

BranchingLaw law2(std::uint32_t q1, BigRational p1, std::uint32_t q2, BigRational p2) {
  return BranchingLaw({{q1, std::move(p1)}, {q2, std::move(p2)}});
}

}  // namespace

TEST_SUITE("law") {

TEST_CASE("valid laws parse and print") {
  const BranchingLaw law = parse_law_json(R"({"law": [{"q": 3, "p": "1/2"}, {"q": 2, "p": "1/2"}]})");
  CHECK(law.to_string() == "{2:1/2, 3:1/2}");
  CHECK(law.branching_support() == std::vector<std::uint32_t>{2, 3});
  CHECK(parse_law_json(law_to_json(law)) == law);
  CHECK(mean_q(law) == make_rational(5, 2));
  CHECK(law.probability(7) == 0);
}

TEST_CASE("validation errors") {
  CHECK(kind_of(R"({"law": [{"q": 2, "p": "1/2"}, {"q": 3, "p": "2/5"}]})") == ErrorKind::ProbabilitySumNotOne);
  CHECK(kind_of(R"({"law": []})") == ErrorKind::ProbabilitySumNotOne);
  CHECK(kind_of(R"({"law": [{"q": 0, "p": "1/2"}, {"q": 2, "p": "1/2"}]})") == ErrorKind::ZeroChildrenForbidden);
  CHECK(kind_of(R"({"law": [{"q": 1, "p": "1"}]})") == ErrorKind::DegenerateLaw);
  CHECK(kind_of(R"({"law": [{"q": 2, "p": "1/2"}, {"q": 2, "p": "1/2"}]})") == ErrorKind::DuplicateSupport);
  CHECK(kind_of(R"({"law": [{"q": 2, "p": 0.5}, {"q": 3, "p": "1/2"}]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"law": [{"q": 2, "p": "3/2"}, {"q": 3, "p": "-1/2"}]})") == ErrorKind::InvalidArgument);
  CHECK(kind_of("not json") == ErrorKind::ParseError);
}

TEST_CASE("q_moment of a regular law") {
  // E[Q^{1-N} u_Q^{binom(N,2)}] for {2:1}, N = 3: 2^{-2} u_2^3
  CHECK(q_moment(regular_law(2), 3) == MultiPoly::var(2, 3) * make_rational(1, 4));
  CHECK(q_moment(regular_law(5), 1) == MultiPoly(BigRational(1)));
  CHECK_THROWS_AS(q_moment(regular_law(2), 0), Error);
}

TEST_CASE("q_moment is affine in the law") {
  // Mixing two laws with weight lambda mixes their moments with the same weight.
  const BigRational lambda = make_rational(1, 3);
  const BranchingLaw a = law2(1, make_rational(1, 4), 2, make_rational(3, 4));
  const BranchingLaw b = law2(2, make_rational(1, 2), 5, make_rational(1, 2));
  const BranchingLaw mix({{1, lambda * make_rational(1, 4)},
                          {2, lambda * make_rational(3, 4) + (1 - lambda) * make_rational(1, 2)},
                          {5, (1 - lambda) * make_rational(1, 2)}});
  for (std::uint32_t n = 1; n <= 6; ++n) {
    CHECK(q_moment(mix, n) == q_moment(a, n) * lambda + q_moment(b, n) * BigRational(1 - lambda));
  }
}

}  // TEST_SUITE
