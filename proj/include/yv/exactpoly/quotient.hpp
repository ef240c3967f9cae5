#pragma once

#include "yv/exactpoly/rat_poly.hpp"

#include <memory>
#include <stdexcept>

namespace yv::exact {

/// Thrown when an element shares a factor with the modulus. The witness is
/// the (monic) common factor.
class NotInvertible : public std::runtime_error {
 public:
  NotInvertible(const std::string& what, RatPoly witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const RatPoly& witness() const noexcept { return witness_; }

 private:
  RatPoly witness_;
};

class QuotientElement;

/// The ring Q[a]/(m(a)) for a squarefree modulus m of degree >= 1. Elements
/// share the ring's modulus by pointer; the ring itself is immutable.
class QuotientRing {
 public:
  /// Throws std::invalid_argument if the modulus is constant or not
  /// squarefree.
  explicit QuotientRing(const RatPoly& modulus);
  explicit QuotientRing(const IntPoly& modulus) : QuotientRing(RatPoly(modulus)) {}

  const RatPoly& modulus() const noexcept { return *modulus_; }
  std::size_t degree() const noexcept { return *modulus_->degree(); }

  QuotientElement element(const RatPoly& representative) const;
  QuotientElement element(const IntPoly& representative) const;
  QuotientElement constant(const Rational& c) const;
  QuotientElement zero() const;
  QuotientElement one() const;
  /// The class of the indeterminate, i.e. the generic root.
  QuotientElement root() const;

 private:
  std::shared_ptr<const RatPoly> modulus_;
};

class QuotientElement {
 public:
  const RatPoly& residue() const noexcept { return residue_; }
  const RatPoly& modulus() const noexcept { return *modulus_; }
  bool is_zero() const noexcept { return residue_.is_zero(); }

  QuotientElement operator-() const;
  QuotientElement& operator+=(const QuotientElement& rhs);
  QuotientElement& operator-=(const QuotientElement& rhs);
  QuotientElement& operator*=(const QuotientElement& rhs);
  QuotientElement& operator*=(const Rational& c);

  friend QuotientElement operator+(QuotientElement a, const QuotientElement& b) { return a += b; }
  friend QuotientElement operator-(QuotientElement a, const QuotientElement& b) { return a -= b; }
  friend QuotientElement operator*(QuotientElement a, const QuotientElement& b) { return a *= b; }
  friend QuotientElement operator*(QuotientElement a, const Rational& c) { return a *= c; }
  friend QuotientElement operator*(const Rational& c, QuotientElement a) { return a *= c; }
  friend bool operator==(const QuotientElement& a, const QuotientElement& b);

  /// Throws NotInvertible carrying gcd(residue, modulus) when it is not 1.
  QuotientElement inverse() const;

 private:
  friend class QuotientRing;
  QuotientElement(std::shared_ptr<const RatPoly> modulus, RatPoly residue);
  void check_same_ring(const QuotientElement& rhs) const;

  std::shared_ptr<const RatPoly> modulus_;
  RatPoly residue_;
};

QuotientElement quotient_mul(const QuotientElement& a, const QuotientElement& b);
QuotientElement quotient_inv(const QuotientElement& e);

}  // namespace yv::exact
