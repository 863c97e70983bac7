#include "gwplasma/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gwplasma/error.hpp"
#include "gwplasma/genfun.hpp"
#include "gwplasma/gwsim.hpp"
#include "gwplasma/meanrec.hpp"
#include "gwplasma/quadrec.hpp"
#include "gwplasma/serialize.hpp"

namespace gwplasma::cli {

using nlohmann::json;

namespace {

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ProbabilitySumNotOne:
    case ErrorKind::ZeroChildrenForbidden:
    case ErrorKind::DegenerateLaw:
    case ErrorKind::DuplicateSupport:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidPath:
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedExactCost:
    case ErrorKind::NegativeBetaUnsupported:
      return true;
    default:
      return false;
  }
}

std::string fmt_double(double x, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

// u_q = q^{-beta} exactly when beta is an integer.
std::optional<BigRational> exact_at_integer_beta(const RationalFn& f, double beta) {
  if (beta != std::floor(beta) || std::abs(beta) > 64) return std::nullopt;
  const auto b = static_cast<long>(beta);
  Substitution at;
  for (auto q : f.variables()) {
    const BigRational p = rational_pow(BigRational(q), static_cast<std::uint64_t>(std::labs(b)));
    at.set(q, b >= 0 ? BigRational(1 / p) : p);
  }
  try {
    return f.evaluate_exact(at);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string series_pretty(const TruncSeries& s) {
  std::ostringstream os;
  for (std::size_t n = 0; n <= s.order(); ++n) os << "t^" << n << ": " << s[n].to_string() << "\n";
  return os.str();
}

std::string report_line(const Report& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << r.name;
  if (r.first_failure_order) os << " (first failure at order " << *r.first_failure_order << ")";
  return os.str();
}

std::string reports_pretty(const std::vector<Report>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << report_line(r);
    if (!r.details.empty()) os << " " << r.details.dump();
    os << "\n";
  }
  return os.str();
}

json reports_json(const std::vector<Report>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr;
}

bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

Report series_equality_report(const std::string& name, const TruncSeries& a, const TruncSeries& b) {
  Report r;
  r.name = name;
  const TruncSeries diff = series_sub(a, b);
  for (std::uint32_t n = 0; n <= diff.order(); ++n) r.add_residual(n, diff[n]);
  return r;
}

BranchingLaw law_at(const RunConfig& c, std::size_t i) {
  if (c.law_paths.size() <= i) throw Error(ErrorKind::InvalidArgument, "a law file is required (--law)");
  return load_law_file(c.law_paths[i]);
}

struct Output {
  std::string text;
  int code = 0;
};

Output run_meanz(const RunConfig& c) {
  const BranchingLaw law = law_at(c, 0);
  json j = {{"law", json::parse(law_to_json(law))}, {"N", c.n}};
  std::ostringstream os;
  if (c.numeric_only) {
    if (!c.beta) throw Error(ErrorKind::InvalidArgument, "--numeric-only needs --beta");
    const double v = mean_z_numeric_direct(law, c.n, *c.beta).back();
    j["beta"] = *c.beta;
    j["value"] = v;
    os << "Zbar_" << c.n << "(" << *c.beta << ") ≈ " << fmt_double(v) << "\n";
  } else {
    const RationalFn z = mean_z(law, c.n);
    const auto pole = largest_negative_pole(z);
    j["mean_z"] = ratfn_to_json(z);
    j["denominator_roots_hint"] = {{"largest_negative_pole", pole ? json(*pole) : json()}};
    if (c.beta) {
      const double v = z.evaluate(*c.beta);
      j["beta"] = *c.beta;
      j["value"] = v;
      const auto exact = exact_at_integer_beta(z, *c.beta);
      if (exact) j["exact_value"] = format_rational(*exact);
      os << "Zbar_" << c.n << "(" << *c.beta << ") = ";
      if (exact) os << format_rational(*exact) << " ≈ ";
      os << fmt_double(v) << "\n";
    } else {
      os << "Zbar_" << c.n << " = " << z.to_string() << "\n";
      if (pole) os << "largest negative pole ≈ " << fmt_double(*pole, 10) << "\n";
    }
  }
  return {c.format == Format::kJson ? j.dump(2) + "\n" : os.str(), 0};
}

Output run_gcpf(const RunConfig& c) {
  const BranchingLaw law = law_at(c, 0);
  switch (c.gcpf_mode) {
    case GcpfMode::kSeries: {
      const TruncSeries s = mean_gcpf(law, c.order).series;
      if (c.format == Format::kJson) {
        return {json{{"law", json::parse(law_to_json(law))}, {"series", series_to_json(s)}}.dump(2) + "\n", 0};
      }
      return {series_pretty(s), 0};
    }
    case GcpfMode::kBetaInfinity: {
      const TruncSeries s = beta_infinity_gcpf(law, c.order);
      if (c.format == Format::kJson) {
        return {json{{"law", json::parse(law_to_json(law))}, {"series", series_to_json(s)}}.dump(2) + "\n", 0};
      }
      return {series_pretty(s), 0};
    }
    case GcpfMode::kVerify:
    case GcpfMode::kFixedPoint: {
      Report r;
      if (c.gcpf_mode == GcpfMode::kVerify) {
        r = verify_functional_equation(law, c.order, c.threads);
      } else {
        r = series_equality_report("fixed_point", fixed_point_iterate(law, c.order, 64, c.threads),
                                   mean_gcpf(law, c.order).series);
        r.details = {{"law", law.to_string()}, {"order", c.order}};
      }
      const std::string text = c.format == Format::kJson ? report_to_json(r).dump(2) + "\n" : reports_pretty({r});
      return {text, r.pass ? 0 : 1};
    }
  }
  return {};
}

Output run_mc(const RunConfig& c) {
  const BranchingLaw law = law_at(c, 0);
  const double beta = c.beta.value_or(1.0);
  const McEstimate e =
      c.adaptive ? mc_mean_z_adaptive(law, c.n, beta, c.samples, c.seed, {4, c.tolerance, 10'000'000}, c.threads)
                 : mc_mean_z(law, c.n, beta, c.samples, c.depth, c.seed, c.threads);
  if (c.format == Format::kJson) {
    const json j = {{"mean", e.mean},       {"std_error", e.std_error}, {"samples", e.samples},
                    {"enclosure_width_max", e.enclosure_width_max}, {"depth", e.depth},
                    {"seed", e.seed}};
    return {j.dump(2) + "\n", 0};
  }
  std::ostringstream os;
  os << "mean " << fmt_double(e.mean, 10) << " std_error " << fmt_double(e.std_error, 4) << " enclosure_width_max "
     << fmt_double(e.enclosure_width_max, 4) << " samples " << e.samples << " depth " << e.depth << " seed "
     << e.seed << "\n";
  return {os.str(), 0};
}

Output run_quad(const RunConfig& c) {
  Report r;
  switch (c.quad_mode) {
    case QuadMode::kRegular:
      r = verify_regular_quadratic(c.q, c.nmax);
      break;
    case QuadMode::kQPower:
      r = verify_q_power_identity(c.q, c.order);
      break;
    case QuadMode::kGlued: {
      GluedSystem sys{law_at(c, 0), law_at(c, 1), EnergyCost::parse(c.costs), c.n,
                      parse_rational(c.occupancy_scale)};
      const double beta = c.beta.value_or(1.0);
      r = verify_mean_quadratic(sys, beta);
      r.details["occupation_at_beta"] = glued_occupation(sys, beta);
      if (sys.costs.exact_supported()) r.details["occupation_exact"] = glued_occupation_exact(sys).to_string();
      break;
    }
    case QuadMode::kConjecture: {
      ConjectureParams p;
      p.beta = c.beta.value_or(1.0);
      p.n = c.n;
      p.samples = c.samples;
      p.depth = c.depth;
      p.seed = c.seed;
      r = conjecture_experiment(law_at(c, 0), p);
      break;
    }
  }
  const std::string text = c.format == Format::kJson ? report_to_json(r).dump(2) + "\n" : reports_pretty({r});
  return {text, r.pass ? 0 : 1};
}

Output run_verify_all(const RunConfig& c) {
  const BranchingLaw law = law_at(c, 0);
  std::vector<Report> reports;
  reports.push_back(verify_functional_equation(law, c.order, c.threads));
  Report fp = series_equality_report("fixed_point", fixed_point_iterate(law, c.order, 64, c.threads),
                                     mean_gcpf(law, c.order).series);
  fp.details = {{"order", c.order}};
  reports.push_back(std::move(fp));
  for (auto q : law.branching_support()) {
    reports.push_back(verify_regular_quadratic(q, c.nmax));
    reports.push_back(verify_q_power_identity(q, c.order));
  }
  Report symmetry;
  symmetry.name = "glued_symmetry";
  Report quadratic;
  quadratic.name = "mean_quadratic";
  for (std::uint32_t n = 1; n <= c.nmax; ++n) {
    const GluedSystem sys{law, law, EnergyCost::zero(), n, 1};
    symmetry.add_residual(n, glued_occupation_exact(sys) - RationalFn(make_rational(n, 2)));
    const Report mq = verify_mean_quadratic(sys, 1.0);
    quadratic.add_residual(n, mq.residuals.empty() ? RationalFn() : mq.residuals.back());
  }
  reports.push_back(std::move(symmetry));
  reports.push_back(std::move(quadratic));
  const bool ok = all_pass(reports);
  if (c.format == Format::kJson) {
    const json j = {{"law", json::parse(law_to_json(law))}, {"pass", ok}, {"suites", reports_json(reports)}};
    return {j.dump(2) + "\n", ok ? 0 : 1};
  }
  std::string text = reports_pretty(reports);
  text += ok ? "all suites passed\n" : "some suites failed\n";
  return {text, ok ? 0 : 1};
}

}  // namespace

std::string emit_sweep(const BranchingLaw& law, std::uint32_t n, const std::vector<double>& beta_grid) {
  const RationalFn z = mean_z(law, n);
  std::ostringstream os;
  os << "beta,value,status\n";
  for (double beta : beta_grid) {
    os << std::setprecision(17) << beta << ",";
    try {
      os << z.evaluate(beta) << ",ok\n";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleProximity && e.kind() != ErrorKind::DivisionByZero) throw;
      os << ",pole\n";
    }
  }
  return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Output result;
    switch (config.command) {
      case Command::kMeanz:
        result = run_meanz(config);
        break;
      case Command::kGcpf:
        result = run_gcpf(config);
        break;
      case Command::kMc:
        result = run_mc(config);
        break;
      case Command::kQuad:
        result = run_quad(config);
        break;
      case Command::kVerifyAll:
        result = run_verify_all(config);
        break;
      case Command::kSweep:
        if (config.beta_grid.empty()) throw Error(ErrorKind::InvalidArgument, "--grid needs at least one beta");
        result = {emit_sweep(law_at(config, 0), config.n, config.beta_grid), 0};
        break;
    }
    if (config.out_path.empty()) {
      out << result.text;
    } else {
      std::ofstream file(config.out_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + config.out_path);
      file << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Mean partition functions of log-Coulomb gases on Galton-Watson trees", "gwplasma"};
  app.set_version_flag("--version", std::string("gwplasma ") + kVersion);
  app.require_subcommand(1);
  app.add_option("--threads", c.threads, "Worker threads for Monte Carlo and per-q operator terms")
      ->check(CLI::Range(1U, 256U));
  app.add_option("--out", c.out_path, "Write results to this file instead of stdout");

  std::string law;
  std::optional<std::string> json_target;
  auto add_law = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--law", law, "Law file: {\"law\": [{\"q\": 2, \"p\": \"1/2\"}, ...]}");
    if (required) opt->required();
  };
  auto add_json = [&](CLI::App* sub) {
    sub->add_option("--json", json_target, "Emit JSON (to the given file, or stdout)")->expected(0, 1);
  };

  auto* meanz = app.add_subcommand("meanz", "Exact mean canonical partition function Zbar_N");
  add_law(meanz);
  meanz->add_option("--n", c.n, "Particle number N")->required();
  meanz->add_option("--beta", c.beta, "Evaluate at this inverse temperature");
  meanz->add_flag("--numeric-only", c.numeric_only, "Run the recursion in doubles (needs --beta)");
  add_json(meanz);

  bool verify = false, fixed_point = false, beta_inf = false;
  auto* gcpf = app.add_subcommand("gcpf", "Mean grand canonical generating function");
  add_law(gcpf);
  gcpf->add_option("--order", c.order, "Truncation order T")->check(CLI::Range(1U, 64U));
  auto* f_verify = gcpf->add_flag("--verify", verify, "Check the functional equation exactly");
  auto* f_fixed = gcpf->add_flag("--fixed-point", fixed_point, "Iterate the fixed-point operator from 1 + t");
  auto* f_inf = gcpf->add_flag("--beta-inf", beta_inf, "E[(1 + t/Q)^Q | Q > 1]");
  f_verify->excludes(f_fixed)->excludes(f_inf);
  f_fixed->excludes(f_inf);
  add_json(gcpf);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of Zbar_N(beta) over sampled trees");
  add_law(mc);
  mc->add_option("--n", c.n, "Particle number N")->required();
  mc->add_option("--beta", c.beta, "Inverse temperature (>= 0)");
  mc->add_option("--samples", c.samples, "Number of trees")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  mc->add_option("--depth", c.depth, "Truncation depth D")->check(CLI::Range(1U, 64U));
  mc->add_flag("--adaptive", c.adaptive, "Double the depth per tree until the enclosure width <= --tolerance");
  mc->add_option("--tolerance", c.tolerance, "Enclosure width target for --adaptive");
  mc->add_option("--seed", c.seed, "Base seed");
  add_json(mc);

  std::string regular, qpower, conjecture;
  std::vector<std::string> glued;
  auto* quad = app.add_subcommand("quad", "Quadratic recurrence identities and glued-tree occupation");
  auto* o_regular = quad->add_option("--regular", regular, "q=<q>: regular-tree quadratic recurrence");
  auto* o_qpower = quad->add_option("--qpower", qpower, "q=<q>: q-power identity");
  auto* o_glued = quad->add_option("--glued", glued, "lawT.json lawP.json")->expected(2);
  auto* o_conj = quad->add_option("--conjecture", conjecture, "law.json: pair-log occupation experiment");
  o_regular->excludes(o_qpower)->excludes(o_glued)->excludes(o_conj);
  o_qpower->excludes(o_glued)->excludes(o_conj);
  o_glued->excludes(o_conj);
  quad->add_option("--nmax", c.nmax, "Largest N for --regular");
  quad->add_option("--order", c.order, "Order for --qpower");
  quad->add_option("--n", c.n, "Particle number for --glued and --conjecture");
  quad->add_option("--beta", c.beta, "Inverse temperature");
  quad->add_option("--costs", c.costs, "zero | linear:<c> | pairlog:<m> | list:<E1>,<E2>,...");
  quad->add_option("--occupancy-scale", c.occupancy_scale, "Per-particle factor rho for P (rational)");
  quad->add_option("--samples", c.samples, "Tree pairs for --conjecture");
  quad->add_option("--depth", c.depth, "Truncation depth for --conjecture");
  quad->add_option("--seed", c.seed, "Seed for --conjecture");
  add_json(quad);

  auto* all = app.add_subcommand("verify-all", "Functional equation, fixed point and quadratic suites");
  add_law(all);
  all->add_option("--nmax", c.nmax, "Largest N for the quadratic suites");
  all->add_option("--order", c.order, "Order for the series suites")->check(CLI::Range(2U, 64U));
  add_json(all);

  auto* sweep = app.add_subcommand("sweep", "CSV of Zbar_N(beta) over a beta grid");
  add_law(sweep);
  sweep->add_option("--n", c.n, "Particle number N")->required();
  sweep->add_option("--grid", c.beta_grid, "Comma-separated beta values")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!law.empty()) c.law_paths = {law};
  if (meanz->parsed()) {
    c.command = Command::kMeanz;
  } else if (gcpf->parsed()) {
    c.command = Command::kGcpf;
    c.gcpf_mode = verify ? GcpfMode::kVerify
                         : fixed_point ? GcpfMode::kFixedPoint : beta_inf ? GcpfMode::kBetaInfinity : GcpfMode::kSeries;
  } else if (mc->parsed()) {
    c.command = Command::kMc;
  } else if (quad->parsed()) {
    c.command = Command::kQuad;
    auto parse_q = [](const std::string& s) -> std::uint32_t {
      const std::string digits = s.rfind("q=", 0) == 0 ? s.substr(2) : s;
      const BigRational v = parse_rational(digits);
      if (v.get_den() != 1 || v < 2) throw Error(ErrorKind::InvalidArgument, "q must be an integer >= 2");
      return static_cast<std::uint32_t>(v.get_num().get_ui());
    };
    try {
      if (!regular.empty()) {
        c.quad_mode = QuadMode::kRegular;
        c.q = parse_q(regular);
      } else if (!qpower.empty()) {
        c.quad_mode = QuadMode::kQPower;
        c.q = parse_q(qpower);
      } else if (!glued.empty()) {
        c.quad_mode = QuadMode::kGlued;
        c.law_paths = glued;
      } else if (!conjecture.empty()) {
        c.quad_mode = QuadMode::kConjecture;
        c.law_paths = {conjecture};
      } else {
        std::cerr << "error: quad needs one of --regular, --qpower, --glued, --conjecture\n";
        return 2;
      }
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  } else if (all->parsed()) {
    c.command = Command::kVerifyAll;
  } else {
    c.command = Command::kSweep;
    c.format = Format::kCsv;
  }
  if (json_target) {
    c.format = Format::kJson;
    if (!json_target->empty()) c.out_path = *json_target;
  }
  return run(c, std::cout, std::cerr);
}

}  // namespace gwplasma::cli
