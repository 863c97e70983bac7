// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gwplasma/genfun.hpp"
#include "gwplasma/gwsim.hpp"
#include "gwplasma/meanrec.hpp"
#include "gwplasma/quadrec.hpp"
#include "oracles.hpp"

using namespace gwplasma;

namespace {

std::vector<BranchingLaw> base_laws() {
  return {regular_law(2), regular_law(3), regular_law(5),
          BranchingLaw({{2, make_rational(1, 2)}, {3, make_rational(1, 2)}}),
          BranchingLaw({{2, make_rational(2, 3)}, {5, make_rational(1, 3)}})};
}

struct Outcome {
  bool pass = true;
  std::string note;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && dt > limit_s) {
    o.pass = false;
    o.note += (o.note.empty() ? "" : "; ") + std::string("over the time limit");
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << title << "  ["
       << std::fixed << std::setprecision(2) << dt << " s";
  if (limit_s > 0) line << " / limit " << std::setprecision(0) << limit_s << " s";
  line << "]";
  if (!o.note.empty()) line << "  " << o.note;
  std::cout << line.str() << std::endl;
}

}  // namespace

int main() {
  criterion(1, "beta = 0: Zbar_N(u = 1) = 1/N!, five laws, N <= 10", 30, [] {
    Outcome o;
    for (const auto& law : base_laws()) {
      const MeanZTable t = mean_z_table(law, 10);
      for (std::uint32_t n = 0; n <= 10; ++n) {
        Substitution at = Substitution::uniform(BigRational(1));
        if (t[n].evaluate_exact(at) != oracle::inverse_factorial(n)) {
          o.pass = false;
          o.note += law.to_string() + " N=" + std::to_string(n) + " ";
        }
      }
    }
    return o;
  });

  criterion(2, "two-point law {q:p, 1:1-p} collapses to {q:1}, q in {2,3}, p in {1/4,1/2,3/4}, N <= 8", 30, [] {
    Outcome o;
    for (std::uint32_t q : {2u, 3u}) {
      const MeanZTable reg = mean_z_table(regular_law(q), 8);
      for (long p : {1L, 2L, 3L}) {
        const BranchingLaw law({{1, make_rational(4 - p, 4)}, {q, make_rational(p, 4)}});
        const MeanZTable t = mean_z_table(law, 8);
        for (std::uint32_t n = 0; n <= 8; ++n) {
          if (!(t[n] == reg[n])) {
            o.pass = false;
            o.note += "q=" + std::to_string(q) + " p=" + std::to_string(p) + "/4 N=" + std::to_string(n) + " ";
          }
        }
      }
    }
    return o;
  });

  criterion(3, "functional equation residual exactly zero through T = 10, five laws", 120, [] {
    Outcome o;
    for (const auto& law : base_laws()) {
      const Report r = verify_functional_equation(law, 10);
      if (!r.pass) {
        o.pass = false;
        o.note += law.to_string() + " first failure " + std::to_string(*r.first_failure_order) + " ";
      }
    }
    return o;
  });

  criterion(4, "fixed-point iteration from 1 + t equals the recursion through order 8, five laws", 120, [] {
    Outcome o;
    for (const auto& law : base_laws()) {
      if (!(fixed_point_iterate(law, 8, 8) == mean_gcpf(law, 8).series)) {
        o.pass = false;
        o.note += law.to_string() + " ";
      }
    }
    return o;
  });

  criterion(5, "regular quadratic recurrence identically zero, q in {2,3,5}, N <= 10", 60, [] {
    Outcome o;
    for (std::uint32_t q : {2u, 3u, 5u}) {
      const Report r = verify_regular_quadratic(q, 10);
      if (!r.pass) {
        o.pass = false;
        o.note += "q=" + std::to_string(q) + " N=" + std::to_string(*r.first_failure_order) + " ";
      }
    }
    return o;
  });

  criterion(6, "q-power identity exact through order 10, q in {2,3}", 60, [] {
    Outcome o;
    for (std::uint32_t q : {2u, 3u}) {
      const Report r = verify_q_power_identity(q, 10);
      if (!r.pass) {
        o.pass = false;
        o.note += "q=" + std::to_string(q) + " order " + std::to_string(*r.first_failure_order) + " ";
      }
    }
    return o;
  });

  criterion(7, "N = 2 closed forms, recursion and conditioning oracle", 0, [] {
    Outcome o;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
      // (q - 1) / (2 (q - u_q))
      const RationalFn expected = RationalFn::quotient(
          MultiPoly(BigRational(q - 1)), (MultiPoly(BigRational(q)) - MultiPoly::var(q)) * BigRational(2));
      if (!(mean_z(regular_law(q), 2) == expected) || !(oracle::mean_z2_by_conditioning(regular_law(q)) == expected)) {
        o.pass = false;
        o.note += "{" + std::to_string(q) + ":1} ";
      }
    }
    // (7/24) / (1 - u_2/4 - u_3/6); numerator sum_q p_q binom(q,2) q^{-2} = 1/8 + 1/6
    const MultiPoly den = MultiPoly(BigRational(1)) - MultiPoly::var(2) * make_rational(1, 4) -
                          MultiPoly::var(3) * make_rational(1, 6);
    const RationalFn expected = RationalFn::quotient(MultiPoly(make_rational(1, 8) + make_rational(1, 6)), den);
    const BranchingLaw mixed = base_laws()[3];
    if (!(mean_z(mixed, 2) == expected) || !(oracle::mean_z2_by_conditioning(mixed) == expected)) {
      o.pass = false;
      o.note += "{2:1/2, 3:1/2} ";
    }
    return o;
  });

  criterion(8, "Monte Carlo vs exact, {2:1/2,3:1/2}, N in {2,3}, beta in {1,2}, 1e4 trees, width <= 1e-4", 300, [] {
    Outcome o;
    const BranchingLaw law = base_laws()[3];
    std::ostringstream notes;
    notes << std::setprecision(3);
    for (double beta : {1.0, 2.0}) {
      for (std::uint32_t n : {2u, 3u}) {
        const McEstimate e = mc_mean_z_adaptive(law, n, beta, 10000, 20240601, {4, 1e-4, 10'000'000});
        const double exact = mean_z_numeric(law, n, beta);
        const double gap = std::abs(e.mean - exact);
        const bool ok = gap <= 3 * e.std_error + e.enclosure_width_max && e.enclosure_width_max <= 1e-4;
        if (!ok) o.pass = false;
        notes << "N=" << n << ",b=" << beta << ": |gap|/se=" << gap / e.std_error << " D=" << e.depth << "; ";
      }
    }
    o.note = notes.str();
    return o;
  });

  criterion(9, "beta = 60 matches the beta -> infinity series within 1e-6, N <= 6, five laws", 0, [] {
    Outcome o;
    double worst = 0.0;
    for (const auto& law : base_laws()) {
      const TruncSeries lim = beta_infinity_gcpf(law, 6);
      for (std::uint32_t n = 0; n <= 6; ++n) {
        Substitution at = Substitution::uniform(BigRational(0));
        const double gap = std::abs(mean_z_numeric(law, n, 60.0) - to_double(lim[n].evaluate_exact(at)));
        worst = std::max(worst, gap);
        if (gap > 1e-6) o.pass = false;
      }
    }
    std::ostringstream os;
    os << "max gap " << std::setprecision(3) << worst;
    o.note = os.str();
    return o;
  });

  criterion(10, "glued identical laws, zero costs: E[N_P] = N/2 exactly, N <= 10, five laws", 0, [] {
    Outcome o;
    for (const auto& law : base_laws()) {
      for (std::uint32_t n = 1; n <= 10; ++n) {
        const GluedSystem sys{law, law, EnergyCost::zero(), n, 1};
        if (!(glued_occupation_exact(sys) == RationalFn(make_rational(n, 2)))) {
          o.pass = false;
          o.note += law.to_string() + " N=" + std::to_string(n) + " ";
        }
      }
    }
    return o;
  });

  criterion(11, "ultrametric on 1e4 triples per tree (5 laws x 3 seeds, D = 8); figure distance 1/12", 60, [] {
    Outcome o;
    for (const auto& law : base_laws()) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Report r = verify_ultrametric(sample_tree(law, 8, seed), 10000, seed + 100);
        if (!r.pass) {
          o.pass = false;
          o.note += law.to_string() + " seed " + std::to_string(seed) + " ";
        }
      }
    }
    const SampledTree fig = figure_tree();
    if (tree_distance_exact(fig, {0, 0, 0, 0}, {0, 0, 0, 1}) != make_rational(1, 12)) {
      o.pass = false;
      o.note += "figure distance ";
    }
    return o;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
