#include "gwplasma/serialize.hpp"

#include <string>

#include "gwplasma/error.hpp"

namespace gwplasma {

nlohmann::json poly_to_json(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    // Keys are decimal variable indices; an ordered_json keeps ascending q.
    nlohmann::ordered_json exps = nlohmann::ordered_json::object();
    for (const auto& [q, e] : t.monomial.entries()) exps[std::to_string(q)] = e;
    terms.push_back({{"exp", nlohmann::json::parse(exps.dump())}, {"coef", format_rational(t.coef)}});
  }
  return terms;
}

MultiPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "polynomial must be a JSON array of terms");
  std::vector<Term> terms;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("exp") || !item.contains("coef") || !item["exp"].is_object() ||
        !item["coef"].is_string()) {
      throw Error(ErrorKind::ParseError, "term must look like {\"exp\": {...}, \"coef\": \"a/b\"}");
    }
    std::vector<Monomial::Entry> entries;
    for (const auto& [key, value] : item["exp"].items()) {
      if (!value.is_number_unsigned()) throw Error(ErrorKind::ParseError, "exponent must be a non-negative integer");
      std::size_t used = 0;
      unsigned long q = 0;
      try {
        q = std::stoul(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size()) throw Error(ErrorKind::ParseError, "variable key \"" + key + "\" is not an integer");
      entries.emplace_back(static_cast<std::uint32_t>(q), value.get<std::uint32_t>());
    }
    terms.push_back({Monomial::from_entries(std::move(entries)), parse_rational(item["coef"].get<std::string>())});
  }
  return MultiPoly::from_terms(std::move(terms));
}

nlohmann::json ratfn_to_json(const RationalFn& f) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& fp : f.den_factors()) {
    factors.push_back({{"factor", poly_to_json(*fp.factor)}, {"exponent", fp.exponent}});
  }
  return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}, {"den_factors", factors}};
}

RationalFn ratfn_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num")) throw Error(ErrorKind::ParseError, "rational function needs \"num\"");
  RationalFn out(poly_from_json(j["num"]));
  if (j.contains("den_factors")) {
    for (const auto& item : j["den_factors"]) {
      if (!item.contains("factor") || !item.contains("exponent") || !item["exponent"].is_number_unsigned()) {
        throw Error(ErrorKind::ParseError, "den_factors entries need \"factor\" and \"exponent\"");
      }
      const RationalFn f(poly_from_json(item["factor"]));
      for (std::uint32_t k = 0; k < item["exponent"].get<std::uint32_t>(); ++k) out = out / f;
    }
  } else if (j.contains("den")) {
    out = out / RationalFn(poly_from_json(j["den"]));
  }
  return out;
}

nlohmann::json series_to_json(const TruncSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(ratfn_to_json(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

}  // namespace gwplasma
