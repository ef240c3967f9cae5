#pragma once

// Slow, independent reference computations used only by the tests. Nothing
// here calls into the library's algorithms; polynomials are plain ascending
// vectors of rationals.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Poly = std::vector<Q>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline Poly scale(Poly a, const Q& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

inline Poly deriv(const Poly& a) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

// Long division; throws if the remainder is nonzero.
inline Poly divide_exact(Poly num, const Poly& den) {
  if (den.empty()) throw std::invalid_argument("division by zero polynomial");
  if (num.size() < den.size()) {
    if (!num.empty()) throw std::runtime_error("inexact division");
    return {};
  }
  Poly q(num.size() - den.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = num[k + den.size() - 1] / den.back();
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q[k] * den[j];
  }
  trim(num);
  if (!num.empty()) throw std::runtime_error("inexact division");
  trim(q);
  return q;
}

// Q_0..Q_{n_max} straight from the recurrence over Q.
inline std::vector<Poly> yv(long n_max) {
  std::vector<Poly> out{Poly{1}};
  if (n_max >= 1) out.push_back(Poly{0, 1});
  for (long n = 1; n < n_max; ++n) {
    const Poly& q = out[n];
    Poly zq2 = mul(Poly{0, 1}, mul(q, q));
    Poly w = sub(mul(q, deriv(deriv(q))), mul(deriv(q), deriv(q)));
    out.push_back(divide_exact(sub(zq2, scale(w, 4)), out[n - 1]));
  }
  return out;
}

// Power series of a/b to `order` terms; b(0) != 0.
inline Poly series_div(const Poly& a, const Poly& b, std::size_t order) {
  Poly r(order);
  for (std::size_t m = 0; m < order; ++m) {
    Q acc = m < a.size() ? a[m] : Q(0);
    for (std::size_t i = 1; i <= m && i < b.size(); ++i) acc -= b[i] * r[m - i];
    r[m] = acc / b[0];
  }
  return r;
}

// p with the factor z^e removed (returns e).
inline Poly strip_zero_roots(Poly p, int& e) {
  e = 0;
  while (!p.empty() && p[0] == 0) {
    p.erase(p.begin());
    ++e;
  }
  return p;
}

// sum over nonzero roots of p of z^-m, 1 <= m <= max_m, from the series
// p0'/p0 = -sum_m z^(m-1) sum_k z_k^-m.
inline Poly inverse_power_sums(const Poly& p, std::size_t max_m) {
  int e = 0;
  Poly p0 = strip_zero_roots(p, e);
  Poly s(max_m + 1);
  if (p0.size() <= 1) return s;
  Poly ld = series_div(deriv(p0), p0, max_m);
  for (std::size_t m = 1; m <= max_m; ++m) s[m] = -ld[m - 1];
  return s;
}

// Taylor coefficients at 0 of w_n with its pole at 0 (if any) removed:
// Q_{n-1}'/Q_{n-1} - Q_n'/Q_n minus the e/z parts.
inline Poly regular_part_of_w(const Poly& q_prev, const Poly& q_curr, std::size_t order) {
  int e1 = 0, e2 = 0;
  Poly a = strip_zero_roots(q_prev, e1);
  Poly b = strip_zero_roots(q_curr, e2);
  Poly la = series_div(deriv(a), a, order + 1);
  Poly lb = series_div(deriv(b), b, order + 1);
  Poly r(order + 1);
  for (std::size_t m = 0; m <= order; ++m) r[m] = la[m] - lb[m];
  return r;
}

// Table 1 of the golden family, as exponent -> coefficient.
inline const std::map<long, std::map<long, std::string>>& table1() {
  static const std::map<long, std::map<long, std::string>> t = {
      {2, {{0, "4"}, {3, "1"}}},
      {3, {{0, "-80"}, {3, "20"}, {6, "1"}}},
      {4, {{1, "11200"}, {7, "60"}, {10, "1"}}},
      {5, {{0, "-6272000"}, {3, "-3136000"}, {6, "78400"}, {9, "2800"}, {12, "140"}, {15, "1"}}},
      {6,
       {{0, "-38635520000"},
        {3, "19317760000"},
        {6, "1448832000"},
        {9, "-17248000"},
        {12, "627200"},
        {15, "18480"},
        {18, "280"},
        {21, "1"}}},
      {7,
       {{1, "-3093932441600000"},
        {7, "-49723914240000"},
        {10, "-828731904000"},
        {13, "13039488000"},
        {16, "62092800"},
        {19, "5174400"},
        {22, "75600"},
        {25, "504"},
        {28, "1"}}},
      {8,
       {{0, "-991048439693312000000"},
        {3, "-743286329769984000000"},
        {6, "37164316488499200000"},
        {9, "1769729356595200000"},
        {12, "126696533483520000"},
        {15, "407736096768000"},
        {18, "-6629855232000"},
        {21, "124309785600"},
        {24, "2018016000"},
        {27, "32771200"},
        {30, "240240"},
        {33, "840"},
        {36, "1"}}},
  };
  return t;
}

}  // namespace oracle
