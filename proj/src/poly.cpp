#include "gwplasma/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gwplasma/error.hpp"

namespace gwplasma {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(std::uint32_t q, std::uint32_t exponent) {
  return from_entries({{q, exponent}});
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  Monomial m;
  for (const auto& [q, e] : entries) {
    if (q < 2) throw Error(ErrorKind::InvalidArgument, "variable index must be >= 2, got " + std::to_string(q));
    if (e == 0) continue;
    if (!m.entries_.empty() && m.entries_.back().first == q) {
      m.entries_.back().second += e;
    } else {
      m.entries_.emplace_back(q, e);
    }
    m.degree_ += e;
  }
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t q) const noexcept {
  for (const auto& [v, e] : entries_) {
    if (v == q) return e;
    if (v > q) break;
  }
  return 0;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  auto it = other.entries_.begin();
  for (const auto& [q, e] : entries_) {
    while (it != other.entries_.end() && it->first < q) ++it;
    if (it == other.entries_.end() || it->first != q || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  out.entries_.reserve(entries_.size() + rhs.entries_.size());
  auto a = entries_.begin();
  auto b = rhs.entries_.begin();
  while (a != entries_.end() || b != rhs.entries_.end()) {
    if (b == rhs.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + rhs.degree_;
  return out;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  auto d = divisor.entries_.begin();
  for (const auto& [q, e] : entries_) {
    std::uint32_t sub = 0;
    if (d != divisor.entries_.end() && d->first == q) sub = (d++)->second;
    if (e > sub) out.entries_.emplace_back(q, e - sub);
  }
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (const auto& [q, e] : entries_) {
    h ^= (static_cast<std::uint64_t>(q) << 32 | e) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first != ib->first) {
      // The monomial that still has the lower variable is larger in it.
      return ia->first < ib->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  if (ia != a.entries().end()) return std::strong_ordering::greater;
  if (ib != b.entries().end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

namespace {

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grlex_compare(a, b) > 0; }
};

void sort_descending(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_compare(a.monomial, b.monomial) > 0; });
}

}  // namespace

// ------------------------------------------------------------ Substitution

void Substitution::set(std::uint32_t q, BigRational value) {
  powers_[q] = {BigRational(1), std::move(value)};
}

Substitution Substitution::at_beta(double beta, const std::vector<std::uint32_t>& variables) {
  Substitution s;
  for (auto q : variables) s.set(q, rational_from_double(std::pow(static_cast<double>(q), -beta)));
  return s;
}

Substitution Substitution::uniform(BigRational value) {
  Substitution s;
  s.uniform_ = std::move(value);
  s.powers_[0] = {BigRational(1), *s.uniform_};
  return s;
}

const BigRational& Substitution::power(std::uint32_t q, std::uint32_t exponent) {
  auto it = powers_.find(uniform_ ? 0U : q);
  if (it == powers_.end()) {
    throw Error(ErrorKind::InvalidArgument, "no value bound for u" + std::to_string(q));
  }
  auto& table = it->second;
  while (table.size() <= exponent) table.push_back(table.back() * table[1]);
  return table[exponent];
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(BigRational constant) {
  if (constant != 0) terms_.push_back({Monomial{}, std::move(constant)});
}

MultiPoly MultiPoly::var(std::uint32_t q, std::uint32_t exponent) {
  return monomial(Monomial::var(q, exponent), BigRational(1));
}

MultiPoly MultiPoly::monomial(Monomial m, BigRational coef) {
  MultiPoly p;
  if (coef != 0) p.terms_.push_back({std::move(m), std::move(coef)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  sort_descending(terms);
  MultiPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

BigRational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coef;
  return BigRational(0);
}

std::uint64_t MultiPoly::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::vector<std::uint32_t> MultiPoly::variables() const {
  std::vector<std::uint32_t> vars;
  for (const auto& t : terms_) {
    for (const auto& [q, e] : t.monomial.entries()) vars.push_back(q);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

// Merge of two descending term lists; sign selects addition or subtraction.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (ia == a.end()) {
      c = std::strong_ordering::less;
    } else if (ib == b.end()) {
      c = std::strong_ordering::greater;
    } else {
      c = grlex_compare(ia->monomial, ib->monomial);
    }
    if (c > 0) {
      out.push_back(*ia++);
    } else if (c < 0) {
      out.push_back({ib->monomial, subtract ? BigRational(-ib->coef) : ib->coef});
      ++ib;
    } else {
      BigRational s = subtract ? BigRational(ia->coef - ib->coef) : BigRational(ia->coef + ib->coef);
      if (s != 0) out.push_back({ia->monomial, std::move(s)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, rhs.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, rhs.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const BigRational& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else if (scalar != 1) {
    for (auto& t : terms_) t.coef *= scalar;
  }
  return *this;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m, const BigRational& coef) const {
  MultiPoly p;
  if (coef == 0) return p;
  p.terms_.reserve(terms_.size());
  // Multiplication by a monomial preserves grlex order.
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coef * coef});
  return p;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const MultiPoly& small = a.size() <= b.size() ? a : b;
  const MultiPoly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) return large.times_monomial(small.terms_[0].monomial, small.terms_[0].coef);

  std::unordered_map<Monomial, BigRational, MonomialHash> acc;
  acc.reserve(small.size() * large.size());
  BigRational prod;
  for (const auto& s : small.terms_) {
    for (const auto& l : large.terms_) {
      mpq_mul(prod.get_mpq_t(), s.coef.get_mpq_t(), l.coef.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(s.monomial * l.monomial);
      if (inserted) {
        it->second = prod;
      } else {
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
      }
    }
  }
  MultiPoly out;
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) out.terms_.push_back({m, std::move(c)});
  }
  sort_descending(out.terms_);
  return out;
}

MultiPoly MultiPoly::pow(std::uint32_t exponent) const {
  MultiPoly result(BigRational(1));
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coef != b.terms_[i].coef || !(a.terms_[i].monomial == b.terms_[i].monomial)) return false;
  }
  return true;
}

std::optional<MultiPoly> MultiPoly::exact_quotient(const MultiPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return MultiPoly{};
  const Term& lead = divisor.leading_term();
  if (divisor.size() == 1) {
    std::vector<Term> q;
    q.reserve(terms_.size());
    BigRational inv = 1 / lead.coef;
    for (const auto& t : terms_) {
      if (!lead.monomial.divides(t.monomial)) return std::nullopt;
      q.push_back({t.monomial.quotient(lead.monomial), t.coef * inv});
    }
    MultiPoly out;
    out.terms_ = std::move(q);
    return out;
  }
  if (total_degree() < divisor.total_degree()) return std::nullopt;

  // Single-divisor division: if the divisor divides exactly, every leading
  // term of the running remainder is divisible by the divisor's leading term.
  std::map<Monomial, BigRational, GrlexDescending> rem;
  for (const auto& t : terms_) rem.emplace_hint(rem.end(), t.monomial, t.coef);
  MultiPoly quotient;
  BigRational c;
  BigRational prod;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.monomial.divides(top->first)) return std::nullopt;
    Monomial m = top->first.quotient(lead.monomial);
    mpq_div(c.get_mpq_t(), top->second.get_mpq_t(), lead.coef.get_mpq_t());
    rem.erase(top);
    for (std::size_t i = 1; i < divisor.terms_.size(); ++i) {
      const Term& d = divisor.terms_[i];
      mpq_mul(prod.get_mpq_t(), c.get_mpq_t(), d.coef.get_mpq_t());
      auto [it, inserted] = rem.try_emplace(m * d.monomial);
      if (inserted) {
        it->second = -prod;
      } else {
        mpq_sub(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
        if (it->second == 0) rem.erase(it);
      }
    }
    quotient.terms_.push_back({std::move(m), c});
  }
  return quotient;
}

BigRational MultiPoly::content() const {
  if (terms_.empty()) return BigRational(1);
  BigInteger g = 0;
  BigInteger l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  BigRational c(g, l);
  c.canonicalize();
  return c;
}

BigRational MultiPoly::evaluate(Substitution& at) const {
  BigRational sum(0);
  BigRational term;
  for (const auto& t : terms_) {
    term = t.coef;
    for (const auto& [q, e] : t.monomial.entries()) term *= at.power(q, e);
    sum += term;
  }
  return sum;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigRational c = t.coef;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    const bool unit = c == 1;
    if (!unit || t.monomial.is_one()) os << format_rational(c);
    bool need_star = !unit;
    for (const auto& [q, e] : t.monomial.entries()) {
      if (need_star) os << "*";
      os << "u" << q;
      if (e != 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

std::strong_ordering poly_compare(const MultiPoly& a, const MultiPoly& b) noexcept {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Term& x = a.terms()[i];
    const Term& y = b.terms()[i];
    if (auto c = grlex_compare(x.monomial, y.monomial); c != 0) return c;
    const int cc = cmp(x.coef, y.coef);
    if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace gwplasma
