#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gwplasma/error.hpp"
#include "gwplasma/gwsim.hpp"
#include "gwplasma/meanrec.hpp"
#include "oracles.hpp"

using namespace gwplasma;

namespace {

BranchingLaw mixed23() { return BranchingLaw({{2, make_rational(1, 2)}, {3, make_rational(1, 2)}}); }

bool same_tree(const SampledTree& a, const SampledTree& b) {
  if (a.size() != b.size()) return false;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    if (a.node(i).child_count != b.node(i).child_count || a.node(i).first_child != b.node(i).first_child) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("gwsim") {

TEST_CASE("regular trees are deterministic in shape") {
  const SampledTree t = sample_tree(regular_law(3), 4, 1);
  CHECK(t.frontier_size() == 81);
  CHECK(t.size() == 1 + 3 + 9 + 27 + 81);
}

TEST_CASE("sampling is a function of law, depth and seed") {
  CHECK(same_tree(sample_tree(mixed23(), 6, 99), sample_tree(mixed23(), 6, 99)));
  CHECK_FALSE(same_tree(sample_tree(mixed23(), 6, 99), sample_tree(mixed23(), 6, 100)));
  CHECK_THROWS_AS(sample_tree(mixed23(), 0, 1), Error);
}

TEST_CASE("a deeper tree extends the shallower one") {
  const SampledTree small = sample_tree(mixed23(), 3, 5);
  const SampledTree big = sample_tree(mixed23(), 6, 5);
  for (const auto& path : all_leaf_paths(small)) {
    SampledTree::Path prefix;
    for (auto c : path) {
      CHECK(small.node(small.locate(prefix)).child_count == big.node(big.locate(prefix)).child_count);
      prefix.push_back(c);
    }
  }
}

TEST_CASE("root child count frequencies") {
  // Binomial(1e5, 1/2): 0.005 is about 3.2 standard deviations.
  int twos = 0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) twos += sample_tree(mixed23(), 1, sample_seed(2024, s)).node(0).child_count == 2;
  CHECK(std::abs(twos / double(n) - 0.5) <= 0.005);
  const BranchingLaw skew({{2, make_rational(1, 10)}, {4, make_rational(9, 10)}});
  int skew_twos = 0;
  for (int s = 0; s < n; ++s) skew_twos += sample_tree(skew, 1, sample_seed(77, s)).node(0).child_count == 2;
  CHECK(std::abs(skew_twos / double(n) - 0.1) <= 0.003);
}

TEST_CASE("small particle numbers are exact") {
  const SampledTree t = sample_tree(mixed23(), 5, 3);
  for (double beta : {0.0, 1.0, 4.0}) {
    const auto e = tree_partition_all(t, 1, beta);
    CHECK(e[0].lo == 1.0);
    CHECK(e[0].hi == 1.0);
    CHECK(e[1].lo == 1.0);
    CHECK(e[1].hi == 1.0);
  }
}

TEST_CASE("beta = 0 gives 1/N! on every tree") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SampledTree t = sample_tree(mixed23(), 4, seed);
    for (std::uint32_t n = 2; n <= 5; ++n) {
      const Enclosure e = tree_partition(t, n, 0.0);
      CHECK(e.contains(to_double(oracle::inverse_factorial(n))));
      CHECK(e.width() <= 1e-14);
    }
  }
}

TEST_CASE("regular q = 2, N = 2, beta = 1 contains 1/3 with width about 4^{-D}") {
  for (std::uint32_t d = 1; d <= 12; ++d) {
    const Enclosure e = tree_partition(sample_tree(regular_law(2), d, 0), 2, 1.0);
    CHECK(e.contains(1.0 / 3.0));
    CHECK(e.width() <= std::pow(4.0, -static_cast<double>(d)));
  }
}

TEST_CASE("regular-tree enclosures contain the exact mean value") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const MeanZTable t = mean_z_table(regular_law(q), 6);
    for (std::uint32_t d : {4u, 8u, 12u}) {
      if (std::pow(q, d) > 3e6) continue;
      const SampledTree tree = sample_tree(regular_law(q), d, 0);
      for (double beta : {0.5, 1.0, 2.0}) {
        const auto enc = tree_partition_all(tree, 6, beta);
        for (std::uint32_t n = 0; n <= 6; ++n) CHECK(enc[n].contains(t[n].evaluate(beta)));
      }
    }
  }
}

TEST_CASE("enclosure width shrinks with depth") {
  for (std::uint64_t seed : {10u, 11u}) {
    double prev = 1.0;
    for (std::uint32_t d = 1; d <= 10; ++d) {
      const double w = tree_partition(sample_tree(mixed23(), d, seed), 2, 1.0).width();
      CHECK(w <= prev / 2);
      prev = w;
    }
  }
  for (std::uint32_t n : {3u, 4u}) {
    double prev = 1.0;
    for (std::uint32_t d = 1; d <= 8; ++d) {
      const double w = tree_partition(sample_tree(mixed23(), d, 4), n, 0.5).width();
      CHECK(w <= prev);
      prev = w;
    }
  }
}

TEST_CASE("tree recursion agrees with brute-force integration") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const SampledTree t = sample_tree(mixed23(), 3, seed);
    for (std::uint32_t n : {2u, 3u}) {
      for (double beta : {0.5, 1.0, 2.5}) {
        const Enclosure rec = tree_partition(t, n, beta);
        const Enclosure direct = oracle::direct_integral(t, n, beta);
        CHECK(rec.lo == doctest::Approx(direct.lo).epsilon(1e-12));
        CHECK(rec.hi == doctest::Approx(direct.hi).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("negative beta is rejected") {
  const SampledTree t = sample_tree(mixed23(), 3, 1);
  CHECK_THROWS_AS(tree_partition(t, 2, -0.5), Error);
  CHECK_THROWS_AS(mc_mean_z(mixed23(), 2, -0.5, 10, 3, 1), Error);
  CHECK_THROWS_AS(mc_mean_z(mixed23(), 2, 1.0, 1, 3, 1), Error);
}

TEST_CASE("Monte Carlo estimator") {
  const McEstimate det = mc_mean_z(regular_law(2), 3, 1.0, 50, 8, 1);
  CHECK(det.std_error == 0.0);
  CHECK(det.mean == tree_partition(sample_tree(regular_law(2), 8, 0), 3, 1.0).mid());
  const McEstimate zero = mc_mean_z(mixed23(), 4, 0.0, 200, 5, 9);
  CHECK(zero.mean == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
  CHECK(zero.std_error <= 1e-15);
  const McEstimate est = mc_mean_z(mixed23(), 2, 1.0, 2000, 10, 42);
  CHECK(std::abs(est.mean - 21.0 / 59.0) <= 3 * est.std_error + est.enclosure_width_max);
  CHECK(est.samples == 2000);
}

TEST_CASE("Monte Carlo results do not depend on the thread count") {
  const McEstimate a = mc_mean_z(mixed23(), 3, 1.0, 300, 6, 17, 1);
  const McEstimate b = mc_mean_z(mixed23(), 3, 1.0, 300, 6, 17, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.enclosure_width_max == b.enclosure_width_max);
}

TEST_CASE("adaptive depth meets the tolerance") {
  const McEstimate est = mc_mean_z_adaptive(mixed23(), 2, 1.0, 100, 7, {2, 1e-5, 10'000'000});
  CHECK(est.enclosure_width_max <= 1e-5);
  CHECK(est.depth >= 4);
  const McEstimate capped = mc_mean_z_adaptive(mixed23(), 2, 0.5, 20, 7, {2, 1e-12, 2000});
  CHECK(capped.enclosure_width_max > 1e-12);
}

TEST_CASE("figure tree distances") {
  const SampledTree t = figure_tree();
  CHECK(tree_distance_exact(t, {0, 0, 0, 0}, {0, 0, 0, 1}) == make_rational(1, 12));
  CHECK(tree_distance(t, {0, 0, 0, 0}, {0, 0, 0, 1}) == doctest::Approx(1.0 / 12.0));
  CHECK(t.subtree_measure({2, 0, 0}) == doctest::Approx(1.0 / 18.0));
  CHECK(t.subtree_measure({2, 0, 1}) == doctest::Approx(1.0 / 18.0));
  CHECK(tree_distance(t, {0, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
  CHECK(tree_distance_exact(t, {0, 0, 0, 0}, {0, 0, 0, 0}) == make_rational(1, 24));
}

TEST_CASE("invalid paths") {
  const SampledTree t = figure_tree();
  CHECK_THROWS_AS(tree_distance(t, {0, 0, 0}, {0, 0, 0, 1}), Error);
  CHECK_THROWS_AS(tree_distance(t, {3, 0, 0, 0}, {0, 0, 0, 1}), Error);
  CHECK_THROWS_AS(tree_distance(t, {0, 2, 0, 0}, {0, 0, 0, 1}), Error);
}

TEST_CASE("ultrametric: exhaustive on small trees") {
  for (std::uint64_t seed : {1u, 2u}) {
    const SampledTree t = sample_tree(mixed23(), 3, seed);
    const auto leaves = all_leaf_paths(t);
    std::vector<BigRational> values;
    for (const auto& x : leaves) {
      for (const auto& y : leaves) {
        const BigRational xy = tree_distance_exact(t, x, y);
        CHECK(xy == tree_distance_exact(t, y, x));
        CHECK(tree_distance_exact(t, x, x) <= xy);
        for (const auto& z : leaves) {
          CHECK(tree_distance_exact(t, x, z) <= std::max(xy, tree_distance_exact(t, y, z)));
        }
      }
    }
  }
  const SampledTree reg = sample_tree(regular_law(2), 4, 0);
  for (const auto& x : all_leaf_paths(reg)) {
    for (const auto& y : all_leaf_paths(reg)) {
      const BigRational d = tree_distance_exact(reg, x, y);
      bool power_of_two = false;
      for (int j = 0; j <= 4; ++j) power_of_two |= d == BigRational(BigInteger(1), BigInteger(1) << j);
      CHECK(power_of_two);
    }
  }
}

TEST_CASE("ultrametric: sampled triples") {
  const Report rep = verify_ultrametric(sample_tree(regular_law(2), 6, 0), 10000, 1);
  CHECK(rep.pass);
  CHECK(rep.details["triples"] == 10000);
  CHECK(verify_ultrametric(sample_tree(mixed23(), 8, 3), 2000, 2).pass);
}

}  // TEST_SUITE
