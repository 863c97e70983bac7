#include "gwplasma/quadrec.hpp"

#include <cmath>
#include <sstream>

#include "gwplasma/error.hpp"
#include "gwplasma/genfun.hpp"
#include "gwplasma/gwsim.hpp"
#include "gwplasma/meanrec.hpp"

namespace gwplasma {

EnergyCost EnergyCost::linear(BigRational c) {
  EnergyCost e;
  e.kind_ = Kind::kLinear;
  e.param_ = std::move(c);
  return e;
}

EnergyCost EnergyCost::pair_log(BigRational base) {
  if (base <= 0) throw Error(ErrorKind::InvalidArgument, "pair-log base must be positive");
  EnergyCost e;
  e.kind_ = Kind::kPairLog;
  e.param_ = std::move(base);
  return e;
}

EnergyCost EnergyCost::explicit_list(std::vector<BigRational> values) {
  EnergyCost e;
  e.kind_ = Kind::kExplicit;
  e.values_ = std::move(values);
  return e;
}

EnergyCost EnergyCost::parse(const std::string& text) {
  if (text == "zero") return zero();
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::ParseError, "cost \"" + text + "\" must be zero, linear:<c>, pairlog:<m> or list:<E1>,...");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "linear") return linear(parse_rational(arg));
  if (kind == "pairlog") return pair_log(parse_rational(arg));
  if (kind == "list") {
    std::vector<BigRational> values;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_rational(item));
    return explicit_list(std::move(values));
  }
  throw Error(ErrorKind::ParseError, "unknown cost kind \"" + kind + "\"");
}

double EnergyCost::energy(std::uint32_t n) const {
  if (n == 0) return 0.0;
  switch (kind_) {
    case Kind::kLinear:
      return to_double(param_) * n;
    case Kind::kPairLog:
      return static_cast<double>(binom2(n)) * std::log(to_double(param_));
    case Kind::kExplicit:
      if (n > values_.size()) {
        throw Error(ErrorKind::InvalidArgument, "no energy cost listed for n = " + std::to_string(n));
      }
      return to_double(values_[n - 1]);
  }
  return 0.0;
}

double EnergyCost::weight(std::uint32_t n, double beta) const {
  if (n == 0) return 1.0;
  return std::exp(-beta * energy(n));
}

bool EnergyCost::exact_supported() const {
  switch (kind_) {
    case Kind::kLinear:
      return param_ == 0;
    case Kind::kPairLog:
      return param_ == 1 || (param_.get_den() == 1 && param_ >= 2);
    case Kind::kExplicit:
      for (const auto& v : values_) {
        if (v != 0) return false;
      }
      return true;
  }
  return false;
}

MultiPoly EnergyCost::exact_weight(std::uint32_t n) const {
  if (!exact_supported()) {
    throw Error(ErrorKind::UnsupportedExactCost,
                "cost " + to_string() + " is not binom(n,2) log m for an integer m >= 2 (nor zero)");
  }
  if (kind_ == Kind::kExplicit && n > values_.size() && n > 0) {
    throw Error(ErrorKind::InvalidArgument, "no energy cost listed for n = " + std::to_string(n));
  }
  if (kind_ != Kind::kPairLog || param_ == 1 || binom2(n) == 0) return MultiPoly(BigRational(1));
  return MultiPoly::var(static_cast<std::uint32_t>(param_.get_num().get_ui()), static_cast<std::uint32_t>(binom2(n)));
}

std::string EnergyCost::to_string() const {
  switch (kind_) {
    case Kind::kLinear:
      return param_ == 0 ? "zero" : "linear:" + format_rational(param_);
    case Kind::kPairLog:
      return "pairlog:" + format_rational(param_);
    case Kind::kExplicit: {
      std::string out = "list:";
      for (std::size_t i = 0; i < values_.size(); ++i) out += (i ? "," : "") + format_rational(values_[i]);
      return out;
    }
  }
  return "";
}

Report verify_regular_quadratic(std::uint32_t q, std::uint32_t n_max) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "regular quadratic recurrence needs q >= 2");
  const MeanZTable z = mean_z_table(regular_law(q), n_max);
  std::vector<RationalFn> weighted(n_max + 1);
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    weighted[n] = z[n] * BigRational(1 / rational_pow(BigRational(q), n));
    if (binom2(n) > 0) weighted[n] = weighted[n].times(MultiPoly::var(q, static_cast<std::uint32_t>(binom2(n))));
  }
  Report report;
  report.name = "regular_quadratic";
  for (std::uint32_t total = 0; total <= n_max; ++total) {
    std::vector<RationalFn> scaled;
    scaled.reserve(total + 1);
    for (std::uint32_t n = 0; n <= total; ++n) {
      const BigRational c = make_rational(total, q + 1) - n;
      scaled.push_back(weighted[n] * c);
    }
    std::vector<std::pair<const RationalFn*, const RationalFn*>> pairs;
    for (std::uint32_t n = 0; n <= total; ++n) pairs.emplace_back(&scaled[n], &z[total - n]);
    report.add_residual(total, RationalFn::sum_of_products(pairs));
  }
  report.details = {{"q", q}, {"n_max", n_max}};
  return report;
}

Report verify_q_power_identity(std::uint32_t q, std::uint32_t order) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "q-power identity needs q >= 2");
  const BranchingLaw law = regular_law(q);
  const TruncSeries z = mean_gcpf(law, order).series;
  const TruncSeries rhs = series_pow(series_rescale(xi_transform(q, z), q), q);
  const TruncSeries residual = series_sub(z, rhs);
  Report report;
  report.name = "q_power_identity";
  for (std::uint32_t n = 0; n <= order; ++n) report.add_residual(n, residual[n]);
  report.details = {{"q", q}, {"order", order}};
  return report;
}

namespace {

void check_glued(const GluedSystem& sys) {
  if (sys.n < 1) throw Error(ErrorKind::InvalidArgument, "glued occupation needs N >= 1");
  if (sys.occupancy_scale <= 0) throw Error(ErrorKind::InvalidArgument, "occupancy scale must be positive");
}

struct NumericTerms {
  std::vector<double> terms;  // w_n Zbar_{n,P} Zbar_{N-n,T}
};

NumericTerms numeric_terms(const GluedSystem& sys, double beta) {
  const auto zp = mean_z_numeric_direct(sys.law_p, sys.n, beta);
  const auto zt = mean_z_numeric_direct(sys.law_t, sys.n, beta);
  const double rho = to_double(sys.occupancy_scale);
  NumericTerms out;
  for (std::uint32_t k = 0; k <= sys.n; ++k) {
    out.terms.push_back(std::pow(rho, k) * sys.costs.weight(k, beta) * zp[k] * zt[sys.n - k]);
  }
  return out;
}

double occupation_from_terms(const std::vector<double>& terms, double beta) {
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    s0 += terms[k];
    s1 += static_cast<double>(k) * terms[k];
  }
  if (std::abs(s0) <= kDefaultPoleEpsilon) {
    std::ostringstream os;
    os << "glued partition function is " << s0 << " at beta = " << beta;
    throw Error(ErrorKind::PoleProximity, os.str());
  }
  return s1 / s0;
}

std::vector<RationalFn> exact_terms(const GluedSystem& sys) {
  if (!sys.costs.exact_supported()) {
    throw Error(ErrorKind::UnsupportedExactCost,
                "cost " + sys.costs.to_string() + " has no exact form in the u variables");
  }
  const MeanZTable zp = mean_z_table(sys.law_p, sys.n);
  const MeanZTable zt = sys.law_t == sys.law_p ? zp : mean_z_table(sys.law_t, sys.n);
  std::vector<RationalFn> weighted(sys.n + 1);
  for (std::uint32_t k = 0; k <= sys.n; ++k) {
    weighted[k] = zp[k].times(sys.costs.exact_weight(k)) * rational_pow(sys.occupancy_scale, k);
  }
  std::vector<RationalFn> terms;
  for (std::uint32_t k = 0; k <= sys.n; ++k) terms.push_back(weighted[k] * zt[sys.n - k]);
  return terms;
}

}  // namespace

double glued_occupation(const GluedSystem& sys, double beta) {
  check_glued(sys);
  return occupation_from_terms(numeric_terms(sys, beta).terms, beta);
}

RationalFn glued_occupation_exact(const GluedSystem& sys) {
  check_glued(sys);
  const auto terms = exact_terms(sys);
  RationalFn s0, s1;
  for (std::uint32_t k = 0; k <= sys.n; ++k) {
    s0 += terms[k];
    s1 += terms[k] * BigRational(k);
  }
  if (s0.is_zero()) throw Error(ErrorKind::DegenerateDenominator, "glued partition function vanishes identically");
  return s1 / s0;
}

Report verify_mean_quadratic(const GluedSystem& sys, double beta) {
  check_glued(sys);
  Report report;
  report.name = "mean_quadratic";
  report.details = {{"law_t", sys.law_t.to_string()},
                    {"law_p", sys.law_p.to_string()},
                    {"costs", sys.costs.to_string()},
                    {"n", sys.n},
                    {"occupancy_scale", format_rational(sys.occupancy_scale)}};
  if (sys.costs.exact_supported()) {
    const auto terms = exact_terms(sys);
    const RationalFn occupation = glued_occupation_exact(sys);
    RationalFn sum;
    for (std::uint32_t k = 0; k <= sys.n; ++k) sum += (occupation - RationalFn(BigRational(k))) * terms[k];
    report.details["mode"] = "exact";
    report.add_residual(sys.n, std::move(sum));
    return report;
  }
  const auto terms = numeric_terms(sys, beta).terms;
  const double occupation = occupation_from_terms(terms, beta);
  double sum = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double t = (occupation - static_cast<double>(k)) * terms[k];
    sum += t;
    scale += std::abs(t);
  }
  report.pass = std::abs(sum) <= 1e-10 * scale;
  if (!report.pass) report.first_failure_order = sys.n;
  report.details["mode"] = "numeric";
  report.details["beta"] = beta;
  report.details["occupation"] = occupation;
  report.details["sum"] = sum;
  report.details["sum_abs_terms"] = scale;
  return report;
}

Report conjecture_experiment(const BranchingLaw& law, const ConjectureParams& params) {
  if (params.beta < 0) throw Error(ErrorKind::NegativeBetaUnsupported, "conjecture experiment needs beta >= 0");
  const BigRational m = mean_q(law);
  const EnergyCost costs = EnergyCost::pair_log(m);
  const double conjectured = static_cast<double>(params.n) / (to_double(m) + 1.0);
  GluedSystem scaled{law, law, costs, params.n, 1 / m};
  GluedSystem literal{law, law, costs, params.n, BigRational(1)};
  const double occ_scaled = glued_occupation(scaled, params.beta);
  const double occ_literal = glued_occupation(literal, params.beta);

  Report report;
  report.name = "conjecture_experiment";
  report.details = {{"law", law.to_string()},
                    {"mean_q", format_rational(m)},
                    {"beta", params.beta},
                    {"n", params.n},
                    {"conjectured", conjectured},
                    {"mean_occupation_scaled", occ_scaled},
                    {"discrepancy_scaled", std::abs(occ_scaled - conjectured)},
                    {"mean_occupation_literal", occ_literal},
                    {"discrepancy_literal", std::abs(occ_literal - conjectured)}};
  if (costs.exact_supported()) {
    const RationalFn exact = glued_occupation_exact(scaled);
    report.details["exact_occupation_scaled"] = exact.to_string();
    report.details["exact_matches_conjecture"] = exact == RationalFn(BigRational(params.n) / (m + 1));
  }

  if (params.samples >= 2) {
    // Occupation of independent tree pairs (T, P), averaged over pairs.
    const std::uint32_t n = params.n;
    double mean_s = 0.0, m2_s = 0.0, mean_l = 0.0, m2_l = 0.0, width_max = 0.0;
    std::vector<double> w_scaled(n + 1), w_literal(n + 1);
    for (std::uint32_t k = 0; k <= n; ++k) {
      w_literal[k] = costs.weight(k, params.beta);
      w_scaled[k] = w_literal[k] * std::pow(to_double(1 / m), k);
    }
    for (std::uint64_t i = 0; i < params.samples; ++i) {
      const auto zt = tree_partition_all(sample_tree(law, params.depth, sample_seed(params.seed, 2 * i)), n,
                                         params.beta);
      const auto zp = tree_partition_all(sample_tree(law, params.depth, sample_seed(params.seed, 2 * i + 1)), n,
                                         params.beta);
      std::vector<double> ts(n + 1), tl(n + 1);
      for (std::uint32_t k = 0; k <= n; ++k) {
        const double prod = zp[k].mid() * zt[n - k].mid();
        ts[k] = w_scaled[k] * prod;
        tl[k] = w_literal[k] * prod;
        width_max = std::max({width_max, zp[k].width(), zt[n - k].width()});
      }
      const double xs = occupation_from_terms(ts, params.beta);
      const double xl = occupation_from_terms(tl, params.beta);
      const double count = static_cast<double>(i + 1);
      const double ds = xs - mean_s;
      mean_s += ds / count;
      m2_s += ds * (xs - mean_s);
      const double dl = xl - mean_l;
      mean_l += dl / count;
      m2_l += dl * (xl - mean_l);
    }
    const double s = static_cast<double>(params.samples);
    report.details["mc_samples"] = params.samples;
    report.details["mc_depth"] = params.depth;
    report.details["mc_seed"] = params.seed;
    report.details["mc_enclosure_width_max"] = width_max;
    report.details["mc_tree_occupation_scaled"] = mean_s;
    report.details["mc_tree_occupation_scaled_std_error"] = std::sqrt(m2_s / (s - 1) / s);
    report.details["mc_tree_occupation_literal"] = mean_l;
    report.details["mc_tree_occupation_literal_std_error"] = std::sqrt(m2_l / (s - 1) / s);
  }
  report.details["observational"] = true;
  report.pass = true;
  return report;
}

}  // namespace gwplasma
