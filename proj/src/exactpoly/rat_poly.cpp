#include "yv/exactpoly/rat_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace yv::exact {

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

RatPoly::RatPoly(const IntPoly& p) {
  coeffs_.reserve(p.size());
  for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return RatPoly(std::move(v));
}

std::optional<std::size_t> RatPoly::degree() const noexcept {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Rational RatPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& RatPoly::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

RatPoly RatPoly::operator-() const {
  RatPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.size() + b.size() - 1);
  Rational t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
      out[i + j] += t;
    }
  }
  RatPoly r;
  r.coeffs_ = std::move(out);
  r.normalize();
  return r;
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return *this * inv;
}

std::string RatPoly::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) {
      os << mag.get_str();
      if (i > 0) os << '*';
    }
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

void RatPoly::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

RatDivMod divmod(const RatPoly& num, const RatPoly& den) {
  if (den.is_zero()) throw std::invalid_argument("divmod: division by the zero polynomial");
  if (num.is_zero() || num.size() < den.size()) return {RatPoly{}, num};
  const std::size_t dd = *den.degree();
  const std::size_t dn = *num.degree();
  std::vector<Rational> r = num.coeffs();
  std::vector<Rational> q(dn - dd + 1);
  const Rational inv_lead = 1 / den.leading();
  const bool monic = den.leading() == 1;
  Rational t;
  for (std::size_t k = dn - dd + 1; k-- > 0;) {
    Rational& top = r[k + dd];
    if (sgn(top) == 0) continue;
    q[k] = monic ? top : top * inv_lead;
    for (std::size_t j = 0; j < dd; ++j) {
      const Rational& dj = den.coeffs()[j];
      if (sgn(dj) == 0) continue;
      mpq_mul(t.get_mpq_t(), q[k].get_mpq_t(), dj.get_mpq_t());
      r[k + j] -= t;
    }
    top = 0;
  }
  r.resize(dd);
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly rem(const RatPoly& num, const RatPoly& den) { return divmod(num, den).remainder; }

RatPoly derivative(const RatPoly& a) {
  if (a.size() <= 1) return {};
  std::vector<Rational> v(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) v[i - 1] = a.coeffs()[i] * static_cast<unsigned long>(i);
  return RatPoly(std::move(v));
}

Rational evaluate_exact(const RatPoly& a, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc *= x;
    acc += a.coeffs()[i];
  }
  return acc;
}

ExtGcd rat_gcd_ext(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() && b.is_zero()) return {RatPoly{}, RatPoly{}, RatPoly{}};

  // Invariants: r0 = s0*a + t0*b, r1 = s1*a + t1*b. Remainders are kept
  // monic to curb coefficient growth.
  RatPoly r0 = a, r1 = b;
  RatPoly s0 = RatPoly::constant(1), s1{};
  RatPoly t0{}, t1 = RatPoly::constant(1);
  auto make_monic = [](RatPoly& r, RatPoly& s, RatPoly& t) {
    if (r.is_zero()) return;
    Rational inv = 1 / r.leading();
    r *= inv;
    s *= inv;
    t *= inv;
  };
  make_monic(r0, s0, t0);
  make_monic(r1, s1, t1);

  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s = s0 - q * s1;
    RatPoly t = t0 - q * t1;
    r0 = std::move(r1);
    s0 = std::move(s1);
    t0 = std::move(t1);
    r1 = std::move(r);
    s1 = std::move(s);
    t1 = std::move(t);
    make_monic(r1, s1, t1);
  }
  return {std::move(r0), std::move(s0), std::move(t0)};
}

IntPoly to_primitive_int(const RatPoly& a) {
  if (a.is_zero()) return {};
  Integer l = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  v.reserve(a.size());
  for (const auto& c : a.coeffs()) {
    Integer x = l / c.get_den();
    v.push_back(x * c.get_num());
  }
  return primitive_part(IntPoly(std::move(v)));
}

}  // namespace yv::exact
