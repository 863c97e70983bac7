#include <random>

#include "doctest.h"
#include "gwplasma/error.hpp"
#include "gwplasma/serialize.hpp"
#include "gwplasma/series.hpp"
#include "oracles.hpp"

using namespace gwplasma;

namespace {

MultiPoly u(std::uint32_t q, std::uint32_t e = 1) { return MultiPoly::var(q, e); }
MultiPoly c(long n, long d = 1) { return MultiPoly(make_rational(n, d)); }
RationalFn r(long n, long d = 1) { return RationalFn(make_rational(n, d)); }

}  // namespace

TEST_SUITE("exactalg") {

TEST_CASE("rational parsing and formatting") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-7")) == "-7");
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK(rational_from_double(0.375) == make_rational(3, 8));
  CHECK(format_rational(make_rational(-2, 2)) == "-1");
}

TEST_CASE("polynomial display and canonical order") {
  const MultiPoly p = u(2, 2) * u(3) * make_rational(3, 2) - u(5) + c(1);
  CHECK(p.to_string() == "3/2*u2^2*u3 - u5 + 1");
  CHECK((p - p).is_zero());
  CHECK(MultiPoly::var(2) * MultiPoly::var(3) == MultiPoly::var(3) * MultiPoly::var(2));
}

TEST_CASE("monomials reject u_0 and u_1") {
  CHECK_THROWS_AS(Monomial::var(1), Error);
  CHECK_THROWS_AS(Monomial::from_entries({{0, 2}}), Error);
}

TEST_CASE("exact division") {
  const MultiPoly a = c(2) - u(2);
  const MultiPoly b = u(3) * c(3) + u(2, 2) - c(1, 2);
  const auto q = (a * b).exact_quotient(a);
  REQUIRE(q.has_value());
  CHECK(*q == b);
  CHECK_FALSE((a * b + c(1)).exact_quotient(a).has_value());
}

TEST_CASE("rational function arithmetic and cancellation") {
  const RationalFn f = RationalFn::quotient(c(1), c(2) - u(2));
  const RationalFn g = RationalFn::quotient(u(2), c(2) - u(2));
  CHECK(f + g == RationalFn::quotient(c(1) + u(2), c(2) - u(2)));
  CHECK((f - f).is_zero());
  const RationalFn h = RationalFn::quotient((c(2) - u(2)) * u(3), c(2) - u(2));
  CHECK(h.is_polynomial());
  CHECK(h == RationalFn(u(3)));
  CHECK_THROWS_AS(f / RationalFn(), Error);
  CHECK_THROWS_AS(RationalFn::quotient(c(1), MultiPoly()), Error);
}

TEST_CASE("denominators are stored with positive leading coefficient") {
  const RationalFn f = RationalFn::quotient(c(1), u(2) - c(3));
  for (const auto& fp : f.den_factors()) CHECK(fp.factor->leading_term().coef > 0);
}

TEST_CASE("numeric evaluation and pole proximity") {
  const RationalFn f = RationalFn::quotient(c(1), (c(2) - u(2)) * c(2));
  CHECK(f.evaluate(0.0) == doctest::Approx(0.5));
  CHECK(f.evaluate(1.0) == doctest::Approx(1.0 / 3.0));
  // u_2 = 2 at beta = -1
  CHECK_THROWS_AS(f.evaluate(-1.0), Error);
  try {
    f.evaluate(-1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleProximity);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const MultiPoly a = oracle::random_poly(rng);
    const MultiPoly b = oracle::random_poly(rng);
    const MultiPoly d = oracle::random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK((a - a).is_zero());
    if (!b.is_zero()) {
      const auto q = (a * b).exact_quotient(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
  }
}

TEST_CASE("rational functions form a field on random inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const MultiPoly n1 = oracle::random_poly(rng, 3, 2), d1 = oracle::random_poly(rng, 3, 2);
    const MultiPoly n2 = oracle::random_poly(rng, 3, 2), d2 = oracle::random_poly(rng, 3, 2);
    if (d1.is_zero() || d2.is_zero() || n2.is_zero()) continue;
    const RationalFn f = RationalFn::quotient(n1, d1);
    const RationalFn g = RationalFn::quotient(n2, d2);
    CHECK(f + g == g + f);
    CHECK(f * g == g * f);
    CHECK((f / g) * g == f);
    CHECK((f + g) - g == f);
    CHECK(f * (g + f) == f * g + f * f);
  }
}

TEST_CASE("evaluation is multiplicative") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const MultiPoly a = oracle::random_poly(rng);
    const MultiPoly b = oracle::random_poly(rng);
    Substitution at;
    at.set(2, make_rational(1, 3));
    at.set(3, make_rational(-2, 7));
    at.set(5, make_rational(5, 4));
    CHECK((a * b).evaluate(at) == a.evaluate(at) * b.evaluate(at));
    CHECK((a + b).evaluate(at) == a.evaluate(at) + b.evaluate(at));
  }
}

TEST_CASE("series power agrees with iterated multiplication") {
  std::mt19937_64 rng(5);
  for (std::uint32_t order : {0u, 1u, 4u, 12u}) {
    TruncSeries s(order);
    for (std::size_t n = 0; n <= order; ++n) s[n] = RationalFn(oracle::random_poly(rng, 2, 1));
    TruncSeries iterated = s;
    for (std::uint32_t q = 1; q <= 8; ++q) {
      if (q > 1) iterated = series_mul(iterated, s);
      CHECK(series_pow(s, q) == iterated);
    }
  }
}

TEST_CASE("series operations") {
  CHECK_THROWS_AS(series_mul(TruncSeries(2), TruncSeries(3)), Error);
  const TruncSeries one = TruncSeries::one(3);
  const TruncSeries scaled = series_rescale(one, 2);
  CHECK(scaled[3] == r(1, 8));
  CHECK(xi_transform(1, one) == one);
  const TruncSeries x = xi_transform(2, one);
  CHECK(x[0] == r(1));
  CHECK(x[1] == r(1));
  CHECK(x[2] == RationalFn(u(2)));
  CHECK(x[3] == RationalFn(u(2, 3)));
}

TEST_CASE("xi transform is linear") {
  std::mt19937_64 rng(9);
  TruncSeries a(5), b(5);
  for (std::size_t n = 0; n <= 5; ++n) {
    a[n] = RationalFn(oracle::random_poly(rng, 3, 2));
    b[n] = RationalFn(oracle::random_poly(rng, 3, 2));
  }
  const BigRational s = make_rational(-3, 7);
  CHECK(xi_transform(3, series_add(a, series_scale(b, s))) ==
        series_add(xi_transform(3, a), series_scale(xi_transform(3, b), s)));
}

TEST_CASE("JSON round trip keeps the function and the term order") {
  const RationalFn f = RationalFn::quotient(u(2, 2) * make_rational(7, 24) - u(3), (c(1) - u(2) * make_rational(1, 4)) *
                                                                                    (c(3) - u(3)));
  const auto j = ratfn_to_json(f);
  CHECK(ratfn_from_json(j) == f);
  // denominator made primitive, (4 - u2)(3 - u3), so the numerator scales by 4
  CHECK(j["num"][0]["coef"] == "7/6");
  CHECK(j["num"][0]["exp"]["2"] == 2);
  nlohmann::json only_den = {{"num", j["num"]}, {"den", j["den"]}};
  CHECK(ratfn_from_json(only_den) == f);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([{"exp": {"x": 1}, "coef": "1"}])")), Error);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([{"exp": {"2": 1}, "coef": 0.5}])")), Error);
}

}  // TEST_SUITE
