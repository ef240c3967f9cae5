#include "yv/exactpoly/int_poly.hpp"

#include "yv/errors.hpp"
#include "yv/exactpoly/rat_poly.hpp"

#include <algorithm>
#include <span>
#include <sstream>
#include <stdexcept>

namespace yv::exact {

namespace {

using Span = std::span<const Integer>;

void trim(std::vector<Integer>& v) {
  while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
}

std::vector<Integer> schoolbook(Span a, Span b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Integer> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

void add_into(std::vector<Integer>& out, std::size_t offset, const std::vector<Integer>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] += v[i];
}

std::vector<Integer> sum(Span a, Span b) {
  std::vector<Integer> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::vector<Integer> karatsuba(Span a, Span b, std::size_t threshold) {
  if (a.empty() || b.empty()) return {};
  if (a.size() < threshold || b.size() < threshold) return schoolbook(a, b);

  const std::size_t h = std::max(a.size(), b.size()) / 2;
  std::vector<Integer> out(a.size() + b.size() - 1);

  // Unbalanced operands: split only the longer one.
  if (a.size() <= h || b.size() <= h) {
    const bool a_short = a.size() <= h;
    Span s = a_short ? a : b;
    Span l = a_short ? b : a;
    add_into(out, 0, karatsuba(s, l.first(h), threshold));
    add_into(out, h, karatsuba(s, l.subspan(h), threshold));
    return out;
  }

  Span a0 = a.first(h), a1 = a.subspan(h);
  Span b0 = b.first(h), b1 = b.subspan(h);
  auto z0 = karatsuba(a0, b0, threshold);
  auto z2 = karatsuba(a1, b1, threshold);
  auto sa = sum(a0, a1);
  auto sb = sum(b0, b1);
  auto z1 = karatsuba(sa, sb, threshold);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

  add_into(out, 0, z0);
  add_into(out, 2 * h, z2);
  // z1 may carry trailing zeros past the product length.
  for (std::size_t i = 0; i < z1.size() && h + i < out.size(); ++i) out[h + i] += z1[i];
  return out;
}

// If every nonzero exponent of p is congruent to one residue r mod 3,
// returns r and fills `packed` with the coefficients of z^(r+3k).
std::optional<std::size_t> stride3(const std::vector<Integer>& p, std::vector<Integer>& packed) {
  std::optional<std::size_t> r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sgn(p[i]) == 0) continue;
    if (!r) {
      r = i % 3;
    } else if (i % 3 != *r) {
      return std::nullopt;
    }
  }
  if (!r) return std::nullopt;
  packed.clear();
  for (std::size_t i = *r; i < p.size(); i += 3) packed.push_back(p[i]);
  return r;
}

std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() >= kKaratsubaThreshold && b.size() >= kKaratsubaThreshold) {
    // Q_n and its derivatives live in z^r Z[z^3]; multiply the packed forms.
    std::vector<Integer> pa, pb;
    auto ra = stride3(a, pa);
    auto rb = ra ? stride3(b, pb) : std::nullopt;
    if (ra && rb) {
      auto packed = karatsuba(pa, pb, kKaratsubaThreshold);
      std::vector<Integer> out(a.size() + b.size() - 1);
      const std::size_t r = *ra + *rb;
      for (std::size_t k = 0; k < packed.size(); ++k) out[r + 3 * k] = std::move(packed[k]);
      return out;
    }
    return karatsuba(a, b, kKaratsubaThreshold);
  }
  return schoolbook(a, b);
}

std::optional<IntPoly> try_exact_div(const IntPoly& num, const IntPoly& den, bool throw_on_fail) {
  if (den.is_zero()) throw std::invalid_argument("exact_div: division by the zero polynomial");
  if (num.is_zero()) return IntPoly{};
  const std::size_t dn = *num.degree();
  const std::size_t dd = *den.degree();
  if (dn < dd) {
    if (throw_on_fail) throw NonZeroRemainder("exact_div: divisor degree exceeds dividend degree");
    return std::nullopt;
  }

  std::vector<Integer> r = num.coeffs();
  const auto& d = den.coeffs();
  const Integer& lead = den.leading();
  const bool monic = lead == 1;
  std::vector<Integer> q(dn - dd + 1);
  Integer t;

  for (std::size_t k = dn - dd + 1; k-- > 0;) {
    Integer& top = r[k + dd];
    if (sgn(top) == 0) continue;
    if (monic) {
      q[k] = top;
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
        if (throw_on_fail) {
          throw NonIntegerQuotient("exact_div: quotient coefficient of z^" + std::to_string(k) +
                                   " is not an integer");
        }
        return std::nullopt;
      }
      mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    }
    for (std::size_t j = 0; j < dd; ++j) {
      if (sgn(d[j]) == 0) continue;
      mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), d[j].get_mpz_t());
    }
    top = 0;
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (sgn(r[j]) != 0) {
      if (throw_on_fail) {
        throw NonZeroRemainder("exact_div: nonzero remainder at z^" + std::to_string(j));
      }
      return std::nullopt;
    }
  }
  return IntPoly(std::move(q));
}

Integer max_norm(const IntPoly& p) {
  Integer m = 0;
  for (const auto& c : p.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
  }
  return m;
}

}  // namespace

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t k) {
  std::vector<Integer> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v));
}

std::optional<std::size_t> IntPoly::degree() const noexcept {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Integer IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

const Integer& IntPoly::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) { return IntPoly(multiply(a.coeffs_, b.coeffs_)); }

IntPoly IntPoly::shifted_up(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<Integer> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::shifted_down(std::size_t k) const {
  if (k > low_order()) throw std::domain_error("shifted_down: z^k does not divide the polynomial");
  if (is_zero()) return {};
  return IntPoly(std::vector<Integer>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
}

std::size_t IntPoly::low_order() const {
  if (coeffs_.empty()) return static_cast<std::size_t>(-1);
  std::size_t k = 0;
  while (sgn(coeffs_[k]) == 0) ++k;
  return k;
}

std::string IntPoly::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Integer mag = abs(c);
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

void IntPoly::normalize() { trim(coeffs_); }

std::vector<Integer> mul_schoolbook(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  auto v = schoolbook(a, b);
  trim(v);
  return v;
}

std::vector<Integer> mul_karatsuba(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                   std::size_t threshold) {
  auto v = karatsuba(a, b, std::max<std::size_t>(threshold, 2));
  trim(v);
  return v;
}

IntPoly derivative(const IntPoly& a) {
  if (a.size() <= 1) return {};
  std::vector<Integer> v(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) v[i - 1] = a.coeffs()[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(v));
}

IntPoly exact_div(const IntPoly& num, const IntPoly& den) { return *try_exact_div(num, den, true); }

Rational evaluate_exact(const IntPoly& a, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc *= x;
    acc += a.coeffs()[i];
  }
  return acc;
}

Integer evaluate_exact(const IntPoly& a, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc *= x;
    acc += a.coeffs()[i];
  }
  return acc;
}

IntPoly reverse_nonzero(const IntPoly& a) {
  if (a.is_zero() || sgn(a.coeffs().front()) == 0) {
    throw ZeroConstantTerm("reverse_nonzero: polynomial has a zero constant term");
  }
  std::vector<Integer> v(a.coeffs().rbegin(), a.coeffs().rend());
  return IntPoly(std::move(v));
}

std::vector<Rational> newton_power_sums(const IntPoly& a, std::size_t max_m) {
  if (a.is_zero() || *a.degree() == 0) {
    throw std::invalid_argument("newton_power_sums: degree must be at least 1");
  }
  const std::size_t d = *a.degree();
  // b_k = c_{d-k} / c_d are the coefficients of the monic normalization.
  const std::size_t kmax = std::min(d, max_m);
  std::vector<Rational> b(kmax + 1);
  for (std::size_t k = 1; k <= kmax; ++k) {
    b[k] = Rational(a.coeffs()[d - k], a.leading());
    b[k].canonicalize();
  }

  std::vector<Rational> p(max_m + 1);
  p[0] = static_cast<unsigned long>(d);
  for (std::size_t m = 1; m <= max_m; ++m) {
    Rational s = 0;
    if (m <= kmax) s = b[m] * static_cast<unsigned long>(m);
    for (std::size_t i = 1; i < m && i <= kmax; ++i) s += b[i] * p[m - i];
    p[m] = -s;
  }
  return p;
}

Integer content(const IntPoly& a) {
  Integer g = 0;
  for (const auto& c : a.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& a) {
  if (a.is_zero()) return {};
  Integer g = content(a);
  if (sgn(a.leading()) < 0) g = -g;
  std::vector<Integer> v(a.coeffs());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPoly pa = primitive_part(a);
  IntPoly pb = primitive_part(b);
  if (*pa.degree() == 0 || *pb.degree() == 0) return IntPoly{1};

  // Heuristic gcd: evaluate at a large integer, take the integer gcd and read
  // the candidate back in balanced base xi. A candidate whose primitive part
  // divides both inputs is the gcd once xi > 2*min(norm) + 2.
  Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer ha = evaluate_exact(pa, xi);
    Integer hb = evaluate_exact(pb, xi);
    Integer h;
    mpz_gcd(h.get_mpz_t(), ha.get_mpz_t(), hb.get_mpz_t());

    std::vector<Integer> g;
    Integer half = xi / 2;
    while (sgn(h) != 0) {
      Integer c;
      mpz_fdiv_r(c.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
      if (c > half) c -= xi;
      g.push_back(c);
      h -= c;
      mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
    }
    IntPoly cand = primitive_part(IntPoly(std::move(g)));
    if (!cand.is_zero() && try_exact_div(pa, cand, false) && try_exact_div(pb, cand, false)) {
      return cand;
    }
    xi = xi * 73794 / 27011;
  }

  return to_primitive_int(rat_gcd_ext(RatPoly(pa), RatPoly(pb)).g);
}

}  // namespace yv::exact
