#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gwplasma/error.hpp"
#include "gwplasma/genfun.hpp"
#include "gwplasma/gwsim.hpp"
#include "gwplasma/law.hpp"
#include "gwplasma/meanrec.hpp"
#include "gwplasma/quadrec.hpp"
#include "gwplasma/report.hpp"
#include "gwplasma/serialize.hpp"

namespace py = pybind11;
using namespace gwplasma;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object fraction(const BigRational& r) {
  return py::module_::import("fractions").attr("Fraction")(format_rational(r));
}

BranchingLaw law_from(const py::object& spec) {
  if (py::isinstance<BranchingLaw>(spec)) return spec.cast<BranchingLaw>();
  if (py::isinstance<py::str>(spec)) return parse_law_json(spec.cast<std::string>());
  // {q: p} shorthand, p given as a rational string or an int.
  if (py::isinstance<py::dict>(spec) && !spec.contains("law")) {
    nlohmann::json entries = nlohmann::json::array();
    for (auto [q, p] : spec.cast<py::dict>()) {
      entries.push_back({{"q", py::int_(py::reinterpret_borrow<py::object>(q)).cast<long>()},
                         {"p", py::str(p).cast<std::string>()}});
    }
    return parse_law_json(nlohmann::json{{"law", entries}}.dump());
  }
  return parse_law_json(py::module_::import("json").attr("dumps")(spec).cast<std::string>());
}

py::list series_list(const TruncSeries& s) {
  py::list out;
  for (std::size_t n = 0; n <= s.order(); ++n) out.append(py::cast(s[n]));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean partition functions of log-repelling particles on Galton-Watson trees.";

  static py::exception<Error> error(m, "GwplasmaError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::reinterpret_borrow<py::object>(error.ptr());
      py::object instance = cls(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<BranchingLaw>(m, "Law")
      .def(py::init(&law_from), py::arg("spec"),
           "From law JSON text, its parsed dict, or a {q: \"p\"} mapping.")
      .def_static("regular", &regular_law, py::arg("q"))
      .def_static("from_file", &load_law_file, py::arg("path"))
      .def("support", [](const BranchingLaw& l) {
        std::vector<std::uint32_t> qs;
        for (const auto& e : l.entries()) qs.push_back(e.q);
        return qs;
      })
      .def("probability", [](const BranchingLaw& l, std::uint32_t q) { return fraction(l.probability(q)); })
      .def("mean", [](const BranchingLaw& l) { return fraction(mean_q(l)); })
      .def("to_json", &law_to_json)
      .def("__repr__", [](const BranchingLaw& l) { return "Law(" + l.to_string() + ")"; });

  py::class_<RationalFn>(m, "RationalFunction")
      .def("__str__", &RationalFn::to_string)
      .def("__repr__", [](const RationalFn& f) { return "RationalFunction(" + f.to_string() + ")"; })
      .def("__eq__", [](const RationalFn& a, const RationalFn& b) { return a == b; })
      .def("variables", &RationalFn::variables)
      .def("__call__", [](const RationalFn& f, double beta) { return f.evaluate(beta); }, py::arg("beta"),
           "Numeric value at u_q = q^-beta.")
      .def(
          "exact", [](const RationalFn& f, std::uint32_t beta) {
            Substitution at;
            for (auto q : f.variables()) at.set(q, 1 / rational_pow(BigRational(q), beta));
            return fraction(f.evaluate_exact(at));
          },
          py::arg("beta"), "Exact value at a non-negative integer beta.")
      .def("to_dict", [](const RationalFn& f) { return to_python(ratfn_to_json(f)); });

  m.def("mean_z", [](const py::object& law, std::uint32_t n) { return mean_z(law_from(law), n); }, py::arg("law"),
        py::arg("n"));
  m.def(
      "mean_z_numeric",
      [](const py::object& law, std::uint32_t n, double beta) { return mean_z_numeric(law_from(law), n, beta); },
      py::arg("law"), py::arg("n"), py::arg("beta"));
  m.def(
      "mean_gcpf", [](const py::object& law, std::uint32_t order) { return series_list(mean_gcpf(law_from(law), order).series); },
      py::arg("law"), py::arg("order"));
  m.def(
      "fixed_point",
      [](const py::object& law, std::uint32_t order) { return series_list(fixed_point_iterate(law_from(law), order)); },
      py::arg("law"), py::arg("order"));
  m.def(
      "beta_infinity",
      [](const py::object& law, std::uint32_t order) {
        const TruncSeries s = beta_infinity_gcpf(law_from(law), order);
        Substitution at = Substitution::uniform(BigRational(0));
        py::list out;
        for (std::size_t n = 0; n <= s.order(); ++n) out.append(fraction(s[n].evaluate_exact(at)));
        return out;
      },
      py::arg("law"), py::arg("order"));

  m.def(
      "verify_functional_equation",
      [](const py::object& law, std::uint32_t order) {
        return to_python(report_to_json(verify_functional_equation(law_from(law), order)));
      },
      py::arg("law"), py::arg("order"));
  m.def(
      "verify_regular_quadratic",
      [](std::uint32_t q, std::uint32_t n_max) { return to_python(report_to_json(verify_regular_quadratic(q, n_max))); },
      py::arg("q"), py::arg("n_max"));
  m.def(
      "verify_q_power_identity",
      [](std::uint32_t q, std::uint32_t order) { return to_python(report_to_json(verify_q_power_identity(q, order))); },
      py::arg("q"), py::arg("order"));
  m.def(
      "glued_occupation",
      [](const py::object& a, const py::object& b, std::uint32_t n, const std::string& costs) {
        return glued_occupation_exact({law_from(a), law_from(b), EnergyCost::parse(costs), n, 1});
      },
      py::arg("law_t"), py::arg("law_p"), py::arg("n"), py::arg("costs") = "zero");

  m.def(
      "mc_mean_z",
      [](const py::object& law, std::uint32_t n, double beta, std::uint64_t samples, std::uint32_t depth,
         std::uint64_t seed, unsigned threads) {
        const BranchingLaw parsed = law_from(law);
        McEstimate e;
        {
          py::gil_scoped_release release;
          e = mc_mean_z(parsed, n, beta, samples, depth, seed, threads);
        }
        py::dict d;
        d["mean"] = e.mean;
        d["std_error"] = e.std_error;
        d["samples"] = e.samples;
        d["enclosure_width_max"] = e.enclosure_width_max;
        d["depth"] = e.depth;
        d["seed"] = e.seed;
        return d;
      },
      py::arg("law"), py::arg("n"), py::arg("beta"), py::arg("samples") = 10000, py::arg("depth") = 12,
      py::arg("seed") = 42, py::arg("threads") = 1);
}
