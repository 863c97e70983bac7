#include "gwplasma/law.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gwplasma/error.hpp"

namespace gwplasma {

BranchingLaw::BranchingLaw(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::ProbabilitySumNotOne, "empty law");
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.q < b.q; });
  BigRational total(0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (e.q == 0) throw Error(ErrorKind::ZeroChildrenForbidden, "q = 0 is not allowed (every node has a child)");
    if (i > 0 && entries_[i - 1].q == e.q) {
      throw Error(ErrorKind::DuplicateSupport, "q = " + std::to_string(e.q) + " listed twice");
    }
    if (e.p <= 0 || e.p > 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "probability of q = " + std::to_string(e.q) + " is " + format_rational(e.p) + ", not in (0, 1]");
    }
    total += e.p;
  }
  if (total != 1) throw Error(ErrorKind::ProbabilitySumNotOne, "probabilities sum to " + format_rational(total));
  if (entries_.size() == 1 && entries_[0].q == 1) {
    throw Error(ErrorKind::DegenerateLaw, "p_1 = 1: the tree never branches");
  }
}

BigRational BranchingLaw::probability(std::uint32_t q) const {
  for (const auto& e : entries_) {
    if (e.q == q) return e.p;
  }
  return BigRational(0);
}

std::vector<std::uint32_t> BranchingLaw::branching_support() const {
  std::vector<std::uint32_t> out;
  for (const auto& e : entries_) {
    if (e.q >= 2) out.push_back(e.q);
  }
  return out;
}

std::string BranchingLaw::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ", ";
    os << entries_[i].q << ":" << format_rational(entries_[i].p);
  }
  os << "}";
  return os.str();
}

bool operator==(const BranchingLaw& a, const BranchingLaw& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].q != b.entries_[i].q || a.entries_[i].p != b.entries_[i].p) return false;
  }
  return true;
}

BranchingLaw regular_law(std::uint32_t q) { return BranchingLaw({{q, BigRational(1)}}); }

MultiPoly q_moment(const BranchingLaw& law, std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "q_moment needs N >= 1");
  const auto pair_count = static_cast<std::uint32_t>(binom2(n));
  std::vector<Term> terms;
  for (const auto& [q, p] : law.entries()) {
    // p_q * q^{1-N}
    BigRational coef = p / rational_pow(BigRational(q), n - 1);
    Monomial m = (q == 1 || pair_count == 0) ? Monomial{} : Monomial::var(q, pair_count);
    terms.push_back({std::move(m), std::move(coef)});
  }
  return MultiPoly::from_terms(std::move(terms));
}

BigRational mean_q(const BranchingLaw& law) {
  BigRational m(0);
  for (const auto& [q, p] : law.entries()) m += p * q;
  return m;
}

BranchingLaw parse_law_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("law file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("law") || !doc["law"].is_array()) {
    throw Error(ErrorKind::ParseError, "expected {\"law\": [{\"q\": <int>, \"p\": \"a/b\"}, ...]}");
  }
  std::vector<BranchingLaw::Entry> entries;
  for (const auto& item : doc["law"]) {
    if (!item.is_object() || !item.contains("q") || !item.contains("p")) {
      throw Error(ErrorKind::ParseError, "each law entry needs \"q\" and \"p\"");
    }
    const auto& q = item["q"];
    const auto& p = item["p"];
    if (!q.is_number_integer() || q.get<std::int64_t>() < 0 || q.get<std::int64_t>() > 1000000) {
      throw Error(ErrorKind::ParseError, "\"q\" must be a non-negative integer, got " + q.dump());
    }
    if (!p.is_string()) {
      throw Error(ErrorKind::ParseError, "\"p\" must be a rational string such as \"1/2\", got " + p.dump());
    }
    entries.push_back({static_cast<std::uint32_t>(q.get<std::int64_t>()), parse_rational(p.get<std::string>())});
  }
  return BranchingLaw(std::move(entries));
}

BranchingLaw load_law_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open law file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_law_json(buf.str());
}

std::string law_to_json(const BranchingLaw& law) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [q, p] : law.entries()) arr.push_back({{"q", q}, {"p", format_rational(p)}});
  return nlohmann::json{{"law", arr}}.dump();
}

}  // namespace gwplasma
