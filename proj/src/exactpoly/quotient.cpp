#include "yv/exactpoly/quotient.hpp"

namespace yv::exact {

namespace {

RatPoly reduce(const RatPoly& p, const RatPoly& m) {
  if (p.size() < m.size()) return p;
  return rem(p, m);
}

}  // namespace

QuotientRing::QuotientRing(const RatPoly& modulus) {
  if (modulus.is_zero() || *modulus.degree() == 0) {
    throw std::invalid_argument("QuotientRing: modulus must have degree >= 1");
  }
  RatPoly m = modulus.monic();
  if (*m.degree() > 1) {
    auto g = rat_gcd_ext(m, derivative(m)).g;
    if (*g.degree() != 0) {
      throw std::invalid_argument("QuotientRing: modulus is not squarefree, repeated factor " +
                                  g.to_string());
    }
  }
  modulus_ = std::make_shared<const RatPoly>(std::move(m));
}

QuotientElement QuotientRing::element(const RatPoly& representative) const {
  return QuotientElement(modulus_, reduce(representative, *modulus_));
}

QuotientElement QuotientRing::element(const IntPoly& representative) const {
  return element(RatPoly(representative));
}

QuotientElement QuotientRing::constant(const Rational& c) const { return element(RatPoly::constant(c)); }
QuotientElement QuotientRing::zero() const { return QuotientElement(modulus_, RatPoly{}); }
QuotientElement QuotientRing::one() const { return constant(1); }
QuotientElement QuotientRing::root() const { return element(RatPoly::monomial(1, 1)); }

QuotientElement::QuotientElement(std::shared_ptr<const RatPoly> modulus, RatPoly residue)
    : modulus_(std::move(modulus)), residue_(std::move(residue)) {}

void QuotientElement::check_same_ring(const QuotientElement& rhs) const {
  if (modulus_ != rhs.modulus_ && *modulus_ != *rhs.modulus_) {
    throw std::invalid_argument("QuotientElement: operands belong to different rings");
  }
}

QuotientElement QuotientElement::operator-() const { return QuotientElement(modulus_, -residue_); }

QuotientElement& QuotientElement::operator+=(const QuotientElement& rhs) {
  check_same_ring(rhs);
  residue_ += rhs.residue_;
  return *this;
}

QuotientElement& QuotientElement::operator-=(const QuotientElement& rhs) {
  check_same_ring(rhs);
  residue_ -= rhs.residue_;
  return *this;
}

QuotientElement& QuotientElement::operator*=(const QuotientElement& rhs) {
  check_same_ring(rhs);
  residue_ = reduce(residue_ * rhs.residue_, *modulus_);
  return *this;
}

QuotientElement& QuotientElement::operator*=(const Rational& c) {
  residue_ *= c;
  return *this;
}

bool operator==(const QuotientElement& a, const QuotientElement& b) {
  return *a.modulus_ == *b.modulus_ && a.residue_ == b.residue_;
}

QuotientElement QuotientElement::inverse() const {
  auto [g, s, t] = rat_gcd_ext(residue_, *modulus_);
  if (g.is_zero() || *g.degree() != 0) {
    throw NotInvertible("QuotientElement::inverse: element shares the factor " +
                            (g.is_zero() ? *modulus_ : g).to_string() + " with the modulus",
                        g.is_zero() ? *modulus_ : g);
  }
  // g is monic of degree 0, so g == 1 and s is the inverse.
  return QuotientElement(modulus_, reduce(s, *modulus_));
}

QuotientElement quotient_mul(const QuotientElement& a, const QuotientElement& b) { return a * b; }
QuotientElement quotient_inv(const QuotientElement& e) { return e.inverse(); }

}  // namespace yv::exact
