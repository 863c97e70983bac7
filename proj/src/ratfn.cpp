#include "gwplasma/ratfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gwplasma/error.hpp"

namespace gwplasma {

namespace {

using FactorList = std::vector<RationalFn::FactorPower>;

bool same_factor(const RationalFn::FactorPower& a, const RationalFn::FactorPower& b) {
  return a.factor == b.factor || *a.factor == *b.factor;
}

// Splits p = scale * primitive with primitive having coprime integer
// coefficients and a positive leading coefficient.
std::pair<BigRational, MultiPoly> split_content(const MultiPoly& p) {
  BigRational c = p.content();
  if (p.leading_term().coef < 0) c = -c;
  MultiPoly prim = p;
  prim *= BigRational(1 / c);
  return {c, std::move(prim)};
}

// Adds f^exponent into a sorted factor list.
void add_factor(FactorList& list, const RationalFn::FactorPower& fp) {
  auto it = std::lower_bound(list.begin(), list.end(), fp, [](const auto& x, const auto& y) {
    return poly_compare(*x.factor, *y.factor) < 0;
  });
  if (it != list.end() && same_factor(*it, fp)) {
    it->exponent += fp.exponent;
  } else {
    list.insert(it, fp);
  }
}

// Walks two sorted factor lists in lockstep; visit(a_or_null, b_or_null).
template <typename Visit>
void zip_factors(const FactorList& a, const FactorList& b, Visit&& visit) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end()) {
      visit(&*ia++, nullptr);
    } else if (ia == a.end()) {
      visit(nullptr, &*ib++);
    } else if (same_factor(*ia, *ib)) {
      visit(&*ia++, &*ib++);
    } else if (poly_compare(*ia->factor, *ib->factor) < 0) {
      visit(&*ia++, nullptr);
    } else {
      visit(nullptr, &*ib++);
    }
  }
}

FactorList factor_lcm(const FactorList& a, const FactorList& b) {
  FactorList out;
  zip_factors(a, b, [&](const RationalFn::FactorPower* x, const RationalFn::FactorPower* y) {
    if (x && y) {
      out.push_back({x->factor, std::max(x->exponent, y->exponent)});
    } else {
      out.push_back(x ? *x : *y);
    }
  });
  return out;
}

FactorList factor_product(const FactorList& a, const FactorList& b) {
  FactorList out;
  zip_factors(a, b, [&](const RationalFn::FactorPower* x, const RationalFn::FactorPower* y) {
    if (x && y) {
      out.push_back({x->factor, x->exponent + y->exponent});
    } else {
      out.push_back(x ? *x : *y);
    }
  });
  return out;
}

bool same_factors(const FactorList& a, const FactorList& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].exponent != b[i].exponent || !same_factor(a[i], b[i])) return false;
  }
  return true;
}

// num * (target / from), where `from` divides `target` factorwise.
MultiPoly lift(const MultiPoly& num, const FactorList& from, const FactorList& target) {
  MultiPoly out = num;
  if (out.is_zero()) return out;
  zip_factors(from, target, [&](const RationalFn::FactorPower* x, const RationalFn::FactorPower* y) {
    const std::uint32_t have = x ? x->exponent : 0;
    const std::uint32_t want = y ? y->exponent : 0;
    for (std::uint32_t k = have; k < want; ++k) out = out * *y->factor;
  });
  return out;
}

}  // namespace

RationalFn::RationalFn(BigRational constant) : num_(std::move(constant)) {}

RationalFn::RationalFn(MultiPoly numerator) : num_(std::move(numerator)) {}

RationalFn RationalFn::quotient(MultiPoly numerator, const MultiPoly& denominator) {
  if (denominator.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  RationalFn r;
  if (numerator.is_zero()) return r;
  auto [scale, prim] = split_content(denominator);
  numerator *= BigRational(1 / scale);
  r.num_ = std::move(numerator);
  if (!prim.is_constant()) r.den_.push_back({std::make_shared<const MultiPoly>(std::move(prim)), 1});
  r.reduce();
  return r;
}

MultiPoly RationalFn::den() const {
  MultiPoly d(BigRational(1));
  for (const auto& fp : den_) d = d * fp.factor->pow(fp.exponent);
  return d;
}

std::vector<std::uint32_t> RationalFn::variables() const {
  std::vector<std::uint32_t> vars = num_.variables();
  for (const auto& fp : den_) {
    auto v = fp.factor->variables();
    vars.insert(vars.end(), v.begin(), v.end());
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  FactorList kept;
  for (auto& fp : den_) {
    while (fp.exponent > 0) {
      auto q = num_.exact_quotient(*fp.factor);
      if (!q) break;
      num_ = std::move(*q);
      --fp.exponent;
    }
    if (fp.exponent > 0) kept.push_back(std::move(fp));
  }
  den_ = std::move(kept);
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  RationalFn r;
  r.den_ = factor_lcm(a.den_, b.den_);
  r.num_ = lift(a.num_, a.den_, r.den_) + lift(b.num_, b.den_, r.den_);
  r.reduce();
  return r;
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero() || b.is_zero()) return RationalFn{};
  RationalFn r;
  r.num_ = a.num_ * b.num_;
  r.den_ = factor_product(a.den_, b.den_);
  r.reduce();
  return r;
}

RationalFn operator*(const RationalFn& a, const BigRational& s) {
  if (s == 0) return RationalFn{};
  RationalFn r = a;
  r.num_ *= s;
  return r;
}

RationalFn RationalFn::times(const MultiPoly& p) const {
  if (p.is_zero() || is_zero()) return RationalFn{};
  RationalFn r;
  r.num_ = num_ * p;
  r.den_ = den_;
  // A monomial multiplier cannot create new cancellation against the
  // non-monomial factors this class produces, so skip the trial division.
  if (p.size() != 1) r.reduce();
  return r;
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero rational function");
  if (a.is_zero()) return RationalFn{};
  // a / b = a.num * b.den / (a.den * b.num); shared factors of a.den and
  // b.den cancel before anything is expanded.
  RationalFn r;
  r.num_ = a.num_;
  zip_factors(a.den_, b.den_, [&](const RationalFn::FactorPower* x, const RationalFn::FactorPower* y) {
    const std::uint32_t ea = x ? x->exponent : 0;
    const std::uint32_t eb = y ? y->exponent : 0;
    if (ea > eb) {
      r.den_.push_back({x->factor, ea - eb});
    } else {
      for (std::uint32_t k = ea; k < eb; ++k) r.num_ = r.num_ * *y->factor;
    }
  });
  auto [scale, prim] = split_content(b.num_);
  r.num_ *= BigRational(1 / scale);
  if (!prim.is_constant()) add_factor(r.den_, {std::make_shared<const MultiPoly>(std::move(prim)), 1});
  r.reduce();
  return r;
}

RationalFn RationalFn::sum_of_products(std::span<const std::pair<const RationalFn*, const RationalFn*>> terms) {
  std::vector<RationalFn> products;
  products.reserve(terms.size());
  FactorList common;
  for (const auto& [x, y] : terms) {
    if (x->is_zero() || y->is_zero()) continue;
    RationalFn p;
    p.num_ = x->num_ * y->num_;
    p.den_ = factor_product(x->den_, y->den_);
    common = factor_lcm(common, p.den_);
    products.push_back(std::move(p));
  }
  RationalFn r;
  if (products.empty()) return r;
  r.den_ = common;
  for (const auto& p : products) r.num_ += lift(p.num_, p.den_, common);
  r.reduce();
  return r;
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  if (same_factors(a.den_, b.den_)) return a.num_ == b.num_;
  const FactorList common = factor_lcm(a.den_, b.den_);
  return lift(a.num_, a.den_, common) == lift(b.num_, b.den_, common);
}

BigRational RationalFn::evaluate_exact(Substitution& at) const {
  BigRational d(1);
  for (const auto& fp : den_) d *= rational_pow(fp.factor->evaluate(at), fp.exponent);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "denominator vanishes at the evaluation point");
  return num_.evaluate(at) / d;
}

double RationalFn::den_value(double beta) const {
  Substitution at = Substitution::at_beta(beta, variables());
  BigRational d(1);
  for (const auto& fp : den_) d *= rational_pow(fp.factor->evaluate(at), fp.exponent);
  return to_double(d);
}

double RationalFn::evaluate(double beta, double pole_eps) const {
  Substitution at = Substitution::at_beta(beta, variables());
  BigRational d(1);
  for (const auto& fp : den_) d *= rational_pow(fp.factor->evaluate(at), fp.exponent);
  if (std::abs(to_double(d)) <= pole_eps) {
    std::ostringstream os;
    os << "denominator " << to_double(d) << " at beta=" << beta << " is within " << pole_eps << " of zero";
    throw Error(ErrorKind::PoleProximity, os.str());
  }
  return to_double(num_.evaluate(at) / d);
}

std::string RationalFn::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")/";
  if (den_.size() == 1 && den_[0].exponent == 1) {
    os << "(" << den_[0].factor->to_string() << ")";
    return os.str();
  }
  os << "(";
  bool first = true;
  for (const auto& fp : den_) {
    if (!first) os << "*";
    first = false;
    os << "(" << fp.factor->to_string() << ")";
    if (fp.exponent != 1) os << "^" << fp.exponent;
  }
  os << ")";
  return os.str();
}

}  // namespace gwplasma
