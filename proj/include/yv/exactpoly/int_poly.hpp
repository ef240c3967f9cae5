#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace yv::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial over Z. Index i of coeffs() is the
/// coefficient of z^i; the highest stored coefficient is always nonzero and
/// the zero polynomial is the empty sequence.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, std::size_t k);
  static IntPoly z() { return monomial(1, 1); }

  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const noexcept;

  /// Coefficient of z^i, zero past the degree.
  Integer coeff(std::size_t i) const;
  const Integer& leading() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly& operator*=(const Integer& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Integer& c) { return a *= c; }
  friend IntPoly operator*(const Integer& c, IntPoly a) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  /// Multiply by z^k.
  IntPoly shifted_up(std::size_t k) const;
  /// Divide by z^k; the k lowest coefficients must vanish.
  IntPoly shifted_down(std::size_t k) const;
  /// Number of trailing zero coefficients (power of z dividing this).
  std::size_t low_order() const;

  std::string to_string(char var = 'z') const;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

// Multiplication kernels, exposed so the dispatching operator* can be
// checked against them.
inline constexpr std::size_t kKaratsubaThreshold = 32;

std::vector<Integer> mul_schoolbook(const std::vector<Integer>& a,
                                    const std::vector<Integer>& b);
std::vector<Integer> mul_karatsuba(const std::vector<Integer>& a,
                                   const std::vector<Integer>& b,
                                   std::size_t threshold = kKaratsubaThreshold);

IntPoly derivative(const IntPoly& a);

/// Returns q with q * den == num. Throws NonIntegerQuotient if some quotient
/// coefficient is not an integer and NonZeroRemainder if den does not divide
/// num.
IntPoly exact_div(const IntPoly& num, const IntPoly& den);

Rational evaluate_exact(const IntPoly& a, const Rational& x);
Integer evaluate_exact(const IntPoly& a, const Integer& x);

/// Coefficient reversal z^d a(1/z). Requires a(0) != 0.
IntPoly reverse_nonzero(const IntPoly& a);

/// Power sums p_m of the roots of a (with multiplicity) for 0 <= m <= max_m;
/// entry 0 is the degree. Requires degree >= 1.
std::vector<Rational> newton_power_sums(const IntPoly& a, std::size_t max_m);

Integer content(const IntPoly& a);
/// a / content(a), with positive leading coefficient.
IntPoly primitive_part(const IntPoly& a);

/// Primitive gcd over Z[z] with positive leading coefficient. gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

}  // namespace yv::exact
