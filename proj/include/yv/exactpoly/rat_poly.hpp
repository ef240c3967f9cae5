#pragma once

#include "yv/exactpoly/int_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace yv::exact {

/// Dense univariate polynomial over Q. Coefficients are kept canonical
/// (mpq_class normalizes after every operation) and the leading stored
/// coefficient is nonzero.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  explicit RatPoly(const IntPoly& p);

  static RatPoly constant(const Rational& c);
  static RatPoly monomial(const Rational& c, std::size_t k);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const noexcept;
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  RatPoly operator-() const;
  RatPoly& operator+=(const RatPoly& rhs);
  RatPoly& operator-=(const RatPoly& rhs);
  RatPoly& operator*=(const Rational& c);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const Rational& c) { return a *= c; }
  friend RatPoly operator*(const Rational& c, RatPoly a) { return a *= c; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

  RatPoly monic() const;
  std::string to_string(char var = 'z') const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

struct RatDivMod {
  RatPoly quotient;
  RatPoly remainder;
};

RatDivMod divmod(const RatPoly& num, const RatPoly& den);
RatPoly rem(const RatPoly& num, const RatPoly& den);
RatPoly derivative(const RatPoly& a);
Rational evaluate_exact(const RatPoly& a, const Rational& x);

struct ExtGcd {
  RatPoly g;  // monic, or zero when both inputs are zero
  RatPoly s;
  RatPoly t;  // g = s*a + t*b
};

ExtGcd rat_gcd_ext(const RatPoly& a, const RatPoly& b);

/// Scales a rational polynomial to a primitive integer one (positive leading
/// coefficient).
IntPoly to_primitive_int(const RatPoly& a);

}  // namespace yv::exact
