#include "yv/mpfloat.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

namespace yv::mp {

std::string Real::to_string(std::size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (digits == 0) {
    digits = static_cast<std::size_t>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 1;
  }
  const int len = mpfr_snprintf(nullptr, 0, "%.*Re", static_cast<int>(digits - 1), v_);
  std::string s(static_cast<std::size_t>(len) + 1, '\0');
  mpfr_snprintf(s.data(), s.size(), "%.*Re", static_cast<int>(digits - 1), v_);
  s.resize(static_cast<std::size_t>(len));
  return s;
}

Real abs(const Real& x) {
  Real r(x.prec());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real cbrt(const Real& x) {
  Real r(x.prec());
  mpfr_cbrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real cos(const Real& x) {
  Real r(x.prec());
  mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x.prec());
  mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real pow2(long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

mpz_class round_to_integer(const Real& x) {
  mpz_class z;
  Real r(x.prec());
  mpfr_round(r.raw(), x.raw());
  mpfr_get_z(z.get_mpz_t(), r.raw(), MPFR_RNDN);
  return z;
}

Complex& Complex::operator*=(const Complex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) { return *this *= o.inverse(); }

Real Complex::norm() const { return re_ * re_ + im_ * im_; }

Real Complex::abs() const {
  Real r(prec());
  mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
  return r;
}

Complex Complex::inverse() const {
  Real d = norm();
  return Complex(re_ / d, -(im_ / d));
}

Complex polar(const Real& r, const Real& theta) { return Complex(r * cos(theta), r * sin(theta)); }

}  // namespace yv::mp
