#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace yv::mp {

/// RAII MPFR real. Every value carries its own precision; binary operations
/// produce a result at the larger of the operand precisions, rounded to
/// nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(long x, mpfr_prec_t prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x, mpfr_prec_t prec) : Real(prec) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& x, mpfr_prec_t prec) : Real(prec) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  Real(const std::string& decimal, mpfr_prec_t prec) : Real(prec) {
    mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN);
  }
  /// Copy of x rounded to a new precision.
  Real(const Real& x, mpfr_prec_t prec) : Real(prec) { mpfr_set(v_, x.v_, MPFR_RNDN); }

  Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

  /// Scientific decimal with the given number of significant digits
  /// (0 = enough to round-trip at this precision).
  std::string to_string(std::size_t digits = 0) const;

  Real& operator+=(const Real& o) { return apply(mpfr_add, o); }
  Real& operator-=(const Real& o) { return apply(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return apply(mpfr_mul, o); }
  Real& operator/=(const Real& o) { return apply(mpfr_div, o); }
  Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long k) { return a *= k; }
  friend Real operator/(Real a, long k) { return a /= k; }
  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  template <class Op>
  Real& apply(Op op, const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real atan2(const Real& y, const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real pi(mpfr_prec_t prec);
/// 2^e at the given precision.
Real pow2(long e, mpfr_prec_t prec);
Real max(const Real& a, const Real& b);
/// Nearest integer.
mpz_class round_to_integer(const Real& x);

/// Complex number as a pair of MPFR reals at a common precision.
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 53) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(const Complex& z, mpfr_prec_t prec) : re_(z.re_, prec), im_(z.im_, prec) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  mpfr_prec_t prec() const { return re_.prec(); }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }
  Complex& operator*=(long k) {
    re_ *= k;
    im_ *= k;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  Complex operator-() const { return Complex(-re_, -im_); }

  Complex conj() const { return Complex(re_, -im_); }
  /// |z|^2
  Real norm() const;
  Real abs() const;
  Complex inverse() const;

 private:
  Real re_, im_;
};

Complex polar(const Real& r, const Real& theta);

}  // namespace yv::mp
