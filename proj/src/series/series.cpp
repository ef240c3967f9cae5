#include "yv/series.hpp"

#include "yv/errors.hpp"

#include <chrono>
#include <sstream>

namespace yv::series {

namespace {

using Clock = std::chrono::steady_clock;
using exact::IntPoly;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// c0 + c1 x + c2 x^2 + c3 x^3
Rational cubic(long x, const Rational& c0, const Rational& c1, const Rational& c2 = 0, const Rational& c3 = 0) {
  Rational X(x);
  return c0 + X * (c1 + X * (c2 + X * c3));
}

const gen::YvRecord& record(std::span<const gen::YvRecord> records, long n) {
  if (n < 0 || static_cast<std::size_t>(n) >= records.size() || records[n].n != n) {
    throw std::out_of_range("record for n = " + std::to_string(n) + " is not available");
  }
  return records[n];
}

// Coefficient k of a^e (e = 2 or 3) from a_0..a_k.
Rational power_coeff(const std::vector<Rational>& a, int e, long k) {
  if (k < 0) return 0;
  std::vector<Rational> sq(static_cast<std::size_t>(k) + 1);
  for (long j = 0; j <= k; ++j) {
    for (long i = 0; i <= j; ++i) sq[j] += a[i] * a[j - i];
  }
  if (e == 2) return sq[k];
  Rational c = 0;
  for (long i = 0; i <= k; ++i) c += a[i] * sq[k - i];
  return c;
}

Rational at_or_zero(const std::vector<Rational>& a, long k) {
  return k < 0 || k >= static_cast<long>(a.size()) ? Rational(0) : a[k];
}

// Sign of the u^2 term and the constant in z^2 u'' = 6u + s z u^2 + 2 z^2 u^3 + z^3 u + c z^2.
struct Transformed {
  long s;
  long c;
};

Transformed transformed(long n, SeriesKind kind) {
  return kind == SeriesKind::plus_pole ? Transformed{-6, n - 1} : Transformed{6, n + 1};
}

Rational transformed_rhs(const std::vector<Rational>& u, long k, Transformed t) {
  Rational r = Rational(t.s) * power_coeff(u, 2, k - 1) + 2 * power_coeff(u, 3, k - 2) + at_or_zero(u, k - 3);
  if (k == 2) r += t.c;
  return r;
}

void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

PowerSumTable inverse_power_sums(const gen::YvRecord& r, long max_m) {
  if (max_m < 0) throw std::invalid_argument("inverse_power_sums: max_m must be non-negative");
  PowerSumTable t;
  t.n = r.n;
  t.sums.assign(static_cast<std::size_t>(max_m) + 1, Rational(0));
  IntPoly p = r.poly;
  while (!p.is_zero() && *p.degree() > 0 && sgn(p.coeff(0)) == 0) p = p.shifted_down(1);
  if (p.is_zero() || *p.degree() == 0) return t;
  // roots of the reversal are the reciprocals of the nonzero roots
  t.sums = exact::newton_power_sums(exact::reverse_nonzero(p), static_cast<std::size_t>(max_m));
  return t;
}

std::optional<Rational> closed_form(long n, long m) {
  switch ((n % 3) * 10 + m) {
    case 3: return q(n, 4);
    case 6: return cubic(n, 0, q(1, 80), q(1, 40));
    case 9: return cubic(n, 0, q(1, 4480), q(7, 4480), q(10, 4480));
    case 13: return Rational(0);
    case 16: return cubic(n, q(1, 280), q(-1, 560), q(-1, 560));
    case 19: return cubic(n, q(2, 22400), q(-1, 22400), q(-1, 22400));
    case 23: return q(-(n + 1), 4);
    case 26: return cubic(n, q(1, 80), q(3, 80), q(1, 40));
    case 29: return cubic(n, q(-20, 22400), q(-85, 22400), q(-115, 22400), q(-50, 22400));
    default: return std::nullopt;
  }
}

std::optional<Rational> difference_form(long n, long m) {
  if (n < 1) return std::nullopt;
  switch ((n % 3) * 10 + m) {
    case 3: return q(-n, 2);
    case 6: return q(-n, 40);
    case 9: return cubic(n, 0, q(-1, 2240), 0, q(-1, 224));
    case 13: return q(n - 1, 4);
    case 16: return cubic(n - 1, 0, q(1, 56), q(3, 112));
    case 19: return cubic(n - 1, 0, q(1, 2800), q(9, 5600), q(1, 448));
    case 23: return q(n + 1, 4);
    case 26: return cubic(n + 1, 0, q(1, 56), q(-3, 112));
    case 29: return cubic(n + 1, 0, q(1, 2800), q(-9, 5600), q(1, 448));
    default: return std::nullopt;
  }
}

VerificationReport verify_closed_forms(std::span<const gen::YvRecord> records, long n_max) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("sums");
  for (long n = 0; n <= n_max; ++n) {
    PowerSumTable t = inverse_power_sums(record(records, n), 9);
    for (long m : {3L, 6L, 9L}) {
      Rational expected = *closed_form(n, m);
      if (t.at(m) != expected) {
        rep.fail({{"n", n}, {"m", m}, {"sum", rational_string(t.at(m))}, {"expected", rational_string(expected)}});
      }
    }
  }
  rep.note = "closed forms m = 3, 6, 9 for n <= " + std::to_string(n_max);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport verify_difference_relations(std::span<const gen::YvRecord> records, long n_max) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("sums");
  if (n_max < 1) return skipped_report("sums", std::nullopt, "difference relations need n >= 1");
  PowerSumTable prev = inverse_power_sums(record(records, 0), 9);
  for (long n = 1; n <= n_max; ++n) {
    PowerSumTable curr = inverse_power_sums(record(records, n), 9);
    for (long m : {3L, 6L, 9L}) {
      Rational expected = *difference_form(n, m);
      Rational got = prev.at(m) - curr.at(m);
      if (got != expected) {
        rep.fail({{"n", n}, {"m", m}, {"difference", rational_string(got)}, {"expected", rational_string(expected)}});
      }
      Rational from_tables = *closed_form(n - 1, m) - *closed_form(n, m);
      if (from_tables != expected) {
        rep.fail({{"n", n},
                  {"m", m},
                  {"closed_form_difference", rational_string(from_tables)},
                  {"expected", rational_string(expected)}});
      }
    }
    prev = std::move(curr);
  }
  rep.note = "difference relations m = 3, 6, 9 for 1 <= n <= " + std::to_string(n_max);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport verify_zero_sums(std::span<const gen::YvRecord> records, long n_max, long m_max) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("sums");
  for (long n = 0; n <= n_max; ++n) {
    PowerSumTable t = inverse_power_sums(record(records, n), m_max);
    for (long m = 1; m <= m_max; ++m) {
      if (m % 3 != 0 && t.at(m) != 0) rep.fail({{"n", n}, {"m", m}, {"sum", rational_string(t.at(m))}});
    }
  }
  rep.note = "zero sums for m not divisible by 3, m <= " + std::to_string(m_max);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

SeriesKind series_kind(long n) {
  switch (n % 3) {
    case 0: return SeriesKind::plain;
    case 1: return SeriesKind::plus_pole;
    default: return SeriesKind::minus_pole;
  }
}

std::vector<Rational> series_from_sums(std::span<const gen::YvRecord> records, long n, std::size_t order) {
  if (n < 1) throw std::invalid_argument("series_from_sums: n must be positive");
  const long top = static_cast<long>(order) + 1;
  PowerSumTable prev = inverse_power_sums(record(records, n - 1), top);
  PowerSumTable curr = inverse_power_sums(record(records, n), top);
  std::vector<Rational> a(order + 1);
  for (std::size_t m = 0; m <= order; ++m) a[m] = curr.sums[m + 1] - prev.sums[m + 1];
  return a;
}

RationalSeries series_at_zero(std::span<const gen::YvRecord> records, long n, std::size_t order) {
  if (n < 1) throw std::invalid_argument("series_at_zero: n must be positive");
  RationalSeries s;
  s.n = n;
  s.kind = series_kind(n);
  s.order = order;
  auto& a = s.coefficients;
  a.assign(order + 1, Rational(0));

  if (s.kind == SeriesKind::plain) {
    // w is odd under z -> omega z up to the factor omega^-1, so only z^(3j+2)
    // survives; a_0 = a_1 = 0 start the recursion.
    for (long k = 0; k + 2 <= static_cast<long>(order); ++k) {
      Rational r = 2 * power_coeff(a, 3, k) + at_or_zero(a, k - 1);
      if (k == 0) r += n;
      a[k + 2] = r / ((k + 2) * (k + 1));
    }
    return s;
  }

  const Transformed t = transformed(n, s.kind);
  for (long k = 0; k <= static_cast<long>(order); ++k) {
    if (k == 3) {
      if (records.size() <= static_cast<std::size_t>(n) || records[n].n != n || records[n - 1].n != n - 1) {
        throw ResonanceUnavailable("series_at_zero: records for n = " + std::to_string(n - 1) + ", " +
                                   std::to_string(n) + " are needed for the order-3 coefficient");
      }
      a[3] = series_from_sums(records, n, 3)[3];
      s.imported = 3;
      continue;
    }
    a[k] = transformed_rhs(a, k, t) / ((k - 3) * (k + 2));
  }
  return s;
}

std::vector<Rational> ode_residual(const RationalSeries& s) {
  const auto& a = s.coefficients;
  const long M = static_cast<long>(s.order);
  std::vector<Rational> r;
  if (s.kind == SeriesKind::plain) {
    for (long k = 0; k + 2 <= M; ++k) {
      Rational v = Rational((k + 2) * (k + 1)) * a[k + 2] - 2 * power_coeff(a, 3, k) - at_or_zero(a, k - 1);
      if (k == 0) v -= s.n;
      r.push_back(v);
    }
    return r;
  }
  const Transformed t = transformed(s.n, s.kind);
  for (long k = 0; k <= M; ++k) r.push_back(Rational(k * (k - 1) - 6) * a[k] - transformed_rhs(a, k, t));
  return r;
}

VerificationReport cross_check_series(std::span<const gen::YvRecord> records, long n, std::size_t order) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("series", n);
  RationalSeries s = series_at_zero(records, n, order);
  std::vector<Rational> sums = series_from_sums(records, n, order);
  for (std::size_t m = 0; m <= order; ++m) {
    if (s.imported && *s.imported == m) continue;
    if (s.coefficients[m] != sums[m]) {
      rep.fail({{"order", m},
                {"recursion", rational_string(s.coefficients[m])},
                {"power_sums", rational_string(sums[m])}});
    }
  }
  auto res = ode_residual(s);
  for (std::size_t k = 0; k < res.size(); ++k) {
    if (res[k] != 0) rep.fail({{"ode_residual_order", k}, {"value", rational_string(res[k])}});
  }
  rep.note = "through order " + std::to_string(order);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::optional<std::vector<Rational>> fit_polynomial(std::span<const long> xs, std::span<const Rational> ys,
                                                    std::size_t max_degree) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_polynomial: size mismatch");
  const std::size_t N = xs.size();
  if (N == 0) return std::vector<Rational>{};
  // Newton divided differences: c[i] = f[x_0..x_i].
  std::vector<Rational> c(ys.begin(), ys.end());
  for (std::size_t j = 1; j < N; ++j) {
    for (std::size_t i = N - 1; i >= j; --i) {
      c[i] = (c[i] - c[i - 1]) / Rational(xs[i] - xs[i - j]);
    }
  }
  for (std::size_t d = 0; d <= max_degree && d < N; ++d) {
    // monomial form of the interpolant through the first d+1 points
    std::vector<Rational> p{c[d]};
    for (std::size_t i = d; i-- > 0;) {
      std::vector<Rational> next(p.size() + 1);
      for (std::size_t k = 0; k < p.size(); ++k) {
        next[k + 1] += p[k];
        next[k] -= p[k] * xs[i];
      }
      next[0] += c[i];
      p = std::move(next);
    }
    trim(p);
    bool fits = true;
    for (std::size_t i = d + 1; i < N && fits; ++i) fits = evaluate_polynomial(p, xs[i]) == ys[i];
    if (fits) return p;
  }
  return std::nullopt;
}

Rational evaluate_polynomial(std::span<const Rational> p, long x) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

std::string polynomial_to_string(std::span<const Rational> p, char var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (i > 0 && c == -1) {
      os << '-';
      c = 1;
    }
    if (i == 0 || c != 1) os << c.get_str();
    if (i > 0) {
      if (c != 1) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return first ? "0" : os.str();
}

std::vector<ClassFit> fit_remark(std::span<const gen::YvRecord> records, long m, long n_max) {
  if (m <= 0 || m % 3 != 0) throw std::invalid_argument("fit_remark: m must be a positive multiple of 3");
  const std::size_t bound = static_cast<std::size_t>(m / 3 + 1);
  const long split = n_max / 2;
  std::vector<ClassFit> out;
  for (int c = 0; c < 3; ++c) {
    ClassFit f;
    f.residue_class = c;
    std::vector<long> xs;
    std::vector<Rational> ys;
    for (long n = c; n <= n_max; n += 3) {
      (n <= split ? f.fit_n : f.held_out_n).push_back(n);
    }
    if (f.fit_n.size() + f.held_out_n.size() < 2 * (bound + 1)) {
      throw std::invalid_argument("fit_remark: n_max = " + std::to_string(n_max) +
                                  " gives too few samples per residue class for m = " + std::to_string(m));
    }
    for (long n : f.fit_n) {
      xs.push_back(n);
      ys.push_back(inverse_power_sums(record(records, n), m).at(m));
    }
    auto p = fit_polynomial(xs, ys, bound);
    if (!p) {
      throw FitFailure("sums at m = " + std::to_string(m) + ", n = " + std::to_string(c) +
                       " mod 3 are not polynomial of degree <= " + std::to_string(bound) + " on n <= " +
                       std::to_string(split));
    }
    f.polynomial = std::move(*p);
    for (long n : f.held_out_n) {
      if (evaluate_polynomial(f.polynomial, n) != inverse_power_sums(record(records, n), m).at(m)) {
        f.mispredicted.push_back(n);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

VerificationReport verify_remark_polynomiality(std::span<const gen::YvRecord> records, long m, long n_max) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("remark");
  std::string note = "m = " + std::to_string(m);
  for (const ClassFit& f : fit_remark(records, m, n_max)) {
    note += "; n = " + std::to_string(f.residue_class) + " mod 3: " + polynomial_to_string(f.polynomial);
    if (!f.mispredicted.empty()) {
      rep.fail({{"m", m},
                {"residue_class", f.residue_class},
                {"polynomial", polynomial_to_string(f.polynomial)},
                {"mispredicted_n", f.mispredicted}});
    }
  }
  rep.note = note;
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::string rational_string(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

nlohmann::json to_json(std::span<const PowerSumTable> tables) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : tables) {
    for (long m = 1; m <= t.max_m(); ++m) rows.push_back({{"n", t.n}, {"m", m}, {"sum", rational_string(t.at(m))}});
  }
  return rows;
}

}  // namespace yv::series
