#include "yv/gen.hpp"

#include "yv/errors.hpp"

#include <chrono>
#include <stdexcept>

namespace yv::gen {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

long two_adic(const Integer& x) {
  if (sgn(x) == 0) return -1;
  return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
}

const YvRecord& at(std::span<const YvRecord> records, long n) {
  if (n < 0 || static_cast<std::size_t>(n) >= records.size() || records[n].n != n) {
    throw std::out_of_range("record for n = " + std::to_string(n) + " is not available");
  }
  return records[n];
}

}  // namespace

std::size_t yv_degree(long n) { return static_cast<std::size_t>(n * (n + 1) / 2); }
std::size_t compressed_top(long n) { return static_cast<std::size_t>(n * (n + 1) / 6); }
long expected_valuation(long n) { return n * (n + 1) / 3; }

std::vector<Integer> cube_compress(const IntPoly& poly, long n) {
  const std::size_t deg = yv_degree(n);
  if (poly.degree() != deg) {
    throw StructureViolation("Q_" + std::to_string(n) + " has degree " +
                             (poly.is_zero() ? std::string("none") : std::to_string(*poly.degree())) +
                             ", expected " + std::to_string(deg));
  }
  const auto& c = poly.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k % 3 != deg % 3 && sgn(c[k]) != 0) {
      throw StructureViolation("Q_" + std::to_string(n) + " has a nonzero coefficient at z^" +
                               std::to_string(k) + ", outside z^" + std::to_string(deg % 3) +
                               " Z[z^3]");
    }
  }
  const std::size_t top = compressed_top(n);
  std::vector<Integer> a(top + 1);
  for (std::size_t s = 0; s <= top; ++s) a[s] = c[deg - 3 * s];
  return a;
}

IntPoly cube_expand(std::span<const Integer> compressed, long n) {
  const std::size_t deg = yv_degree(n);
  if (compressed.size() != compressed_top(n) + 1) {
    throw StructureViolation("compressed form of Q_" + std::to_string(n) + " must have " +
                             std::to_string(compressed_top(n) + 1) + " entries");
  }
  std::vector<Integer> c(deg + 1);
  for (std::size_t s = 0; s < compressed.size(); ++s) c[deg - 3 * s] = compressed[s];
  return IntPoly(std::move(c));
}

YvRecord make_record(long n, IntPoly poly) {
  if (n < 0) throw std::invalid_argument("make_record: n must be nonnegative");
  YvRecord r;
  r.n = n;
  r.compressed = cube_compress(poly, n);
  if (r.compressed.front() != 1) {
    throw StructureViolation("Q_" + std::to_string(n) + " is not monic");
  }
  r.x_n = r.compressed.back();
  if (sgn(r.x_n) == 0) {
    throw StructureViolation("Q_" + std::to_string(n) + " has a vanishing lowest coefficient");
  }
  r.p_n = two_adic(r.x_n);
  r.residue_class = static_cast<int>(n % 3);
  r.poly = std::move(poly);
  return r;
}

IntPoly next_yv(const IntPoly& q_prev, const IntPoly& q_curr) {
  IntPoly d1 = derivative(q_curr);
  IntPoly d2 = derivative(d1);
  IntPoly rhs = (q_curr * q_curr).shifted_up(1);
  rhs -= Integer(4) * (q_curr * d2 - d1 * d1);
  return exact_div(rhs, q_prev);
}

void generate_streaming(long n_max, const std::function<void(const YvRecord&)>& sink) {
  if (n_max < 0) throw std::invalid_argument("generate: n_max must be nonnegative");
  IntPoly prev{1};
  IntPoly curr = IntPoly::z();
  for (long n = 0; n <= n_max; ++n) {
    const IntPoly& q = n == 0 ? prev : curr;
    YvRecord r = make_record(n, q);
    if (r.p_n != expected_valuation(n)) {
      throw IntegrityError("2-adic valuation of x_" + std::to_string(n) + " is " +
                           std::to_string(r.p_n) + ", expected " +
                           std::to_string(expected_valuation(n)));
    }
    sink(r);
    if (n >= 1 && n < n_max) {
      IntPoly next = next_yv(prev, curr);
      prev = std::move(curr);
      curr = std::move(next);
    }
  }
}

std::vector<YvRecord> generate(long n_max) {
  std::vector<YvRecord> out;
  if (n_max >= 0) out.reserve(static_cast<std::size_t>(n_max) + 1);
  generate_streaming(n_max, [&](const YvRecord& r) { out.push_back(r); });
  return out;
}

VerificationReport check_structure(const YvRecord& r) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("structure", r.n);
  try {
    auto a = cube_compress(r.poly, r.n);
    if (a != r.compressed) rep.fail({{"check", "compressed coefficients disagree with Q_n"}});
    if (a.front() != 1) rep.fail({{"check", "monic"}, {"leading", a.front().get_str()}});
    if (cube_expand(a, r.n) != r.poly) rep.fail({{"check", "cube_expand round trip"}});
    if (sgn(a.back()) == 0 || a.back() != r.x_n) {
      rep.fail({{"check", "x_n"}, {"x_n", r.x_n.get_str()}});
    }
    if ((r.n % 3 == 1) != (sgn(r.poly.coeff(0)) == 0 && r.n > 0)) {
      rep.fail({{"check", "zero root iff n = 1 mod 3"}});
    }
  } catch (const StructureViolation& e) {
    rep.fail({{"check", "z^3 structure"}, {"error", e.what()}});
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport check_divisibility(const YvRecord& r) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("divisibility", r.n);
  for (std::size_t m = 0; m < r.compressed.size(); ++m) {
    const Integer& a = r.compressed[m];
    if (sgn(a) == 0) continue;
    if (!mpz_divisible_2exp_p(a.get_mpz_t(), 2 * m)) {
      rep.fail({{"m", m}, {"a_m", a.get_str()}});
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport valuation_checks(std::span<const YvRecord> records) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("valuation");
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].n != static_cast<long>(i)) {
      throw std::invalid_argument("valuation_checks: records must be contiguous from n = 0");
    }
  }
  for (const auto& r : records) {
    const long v = two_adic(r.x_n);
    if (v != expected_valuation(r.n) || r.p_n != v) {
      rep.fail({{"check", "p_n = floor(n(n+1)/3)"}, {"n", r.n}, {"p_n", v},
                {"expected", expected_valuation(r.n)}});
    }
  }
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const long n = static_cast<long>(i);
    const Integer& xm = records[i - 1].x_n;
    const Integer& x = records[i].x_n;
    const Integer& xp = records[i + 1].x_n;
    Integer factor;
    switch (n % 3) {
      case 0: factor = 2 * n + 1; break;
      case 1: factor = 4; break;
      default: factor = -(2 * n + 1); break;
    }
    if (xp * xm != factor * x * x) {
      rep.fail({{"check", "x_{n+1} x_{n-1} recursion"}, {"n", n}, {"lhs", Integer(xp * xm).get_str()},
                {"rhs", Integer(factor * x * x).get_str()}});
    }
    const long pm = two_adic(xm), p = two_adic(x), pp = two_adic(xp);
    const long predicted = 2 * p - pm + (n % 3 == 1 ? 2 : 0);
    if (pp != predicted) {
      rep.fail({{"check", "p_n recursion"}, {"n", n}, {"p_next", pp}, {"predicted", predicted}});
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport wronskian_check(std::span<const YvRecord> records, long n) {
  if (n < 1) throw std::invalid_argument("wronskian_check: needs n >= 1");
  auto t0 = Clock::now();
  VerificationReport rep = make_report("wronskian", n);
  const IntPoly& qm = at(records, n - 1).poly;
  const IntPoly& q = at(records, n).poly;
  const IntPoly& qp = at(records, n + 1).poly;
  IntPoly lhs = derivative(qp) * qm - qp * derivative(qm);
  IntPoly rhs = Integer(2 * n + 1) * (q * q);
  if (lhs != rhs) {
    IntPoly diff = lhs - rhs;
    rep.fail({{"difference_degree", *diff.degree()}, {"difference_leading", diff.leading().get_str()}});
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport mod4_reduction(const YvRecord& r) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("mod4", r.n);
  IntPoly p = r.n % 3 == 1 ? r.poly.shifted_down(1) : r.poly;
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    if (!mpz_divisible_2exp_p(c[k].get_mpz_t(), 2)) {
      rep.fail({{"exponent", k}, {"coefficient", c[k].get_str()}});
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport verify_irrationality_premises(const YvRecord& r) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("irrationality", r.n);
  rep.absorb(check_divisibility(r));
  rep.absorb(mod4_reduction(r));
  if (r.p_n != expected_valuation(r.n)) {
    rep.fail({{"check", "p_n"}, {"p_n", r.p_n}, {"expected", expected_valuation(r.n)}});
  }
  if (rep.passed()) {
    rep.note = r.n == 0 ? "Q_0 = 1 has no roots"
                        : "4^m | a_m, Q_n = z^deg mod 4 and p_n = floor(n(n+1)/3): an integer root "
                          "x = 2y would force p_n >= n(n+1)/3 + 1, so nonzero roots are irrational";
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

RationalSolution make_rational(long n, IntPoly num, IntPoly den) {
  if (den.is_zero()) throw DegenerateDenominator("rational function with zero denominator");
  if (num.is_zero()) return {n, IntPoly{}, IntPoly{1}};
  IntPoly g = gcd(num, den);
  if (*g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  Integer c;
  Integer cn = content(num), cd = content(den);
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (sgn(den.leading()) < 0) c = -c;
  if (c != 1) {
    for (IntPoly* p : {&num, &den}) {
      std::vector<Integer> v = p->coeffs();
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
      *p = IntPoly(std::move(v));
    }
  }
  return {n, std::move(num), std::move(den)};
}

RationalSolution negate(const RationalSolution& w) { return {-w.n, -w.numerator, w.denominator}; }

RationalSolution rational_solution(std::span<const YvRecord> records, long n) {
  if (n == 0) return {0, IntPoly{}, IntPoly{1}};
  if (n < 0) return negate(rational_solution(records, -n));
  const IntPoly& qm = at(records, n - 1).poly;
  const IntPoly& q = at(records, n).poly;
  IntPoly num = derivative(qm) * q - qm * derivative(q);
  IntPoly den = qm * q;
  IntPoly g = gcd(num, den);
  if (*g.degree() != 0) {
    throw UnexpectedCommonFactor("w_" + std::to_string(n) + ": numerator and Q_{n-1} Q_n share " +
                                 g.to_string());
  }
  return make_rational(n, std::move(num), std::move(den));
}

VerificationReport pII_residual(const RationalSolution& w, long alpha) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("pii", w.n);
  const IntPoly& N = w.numerator;
  const IntPoly& D = w.denominator;
  IntPoly N1 = derivative(N), N2 = derivative(N1);
  IntPoly D1 = derivative(D), D2 = derivative(D1);
  IntPoly D_sq = D * D;
  IntPoly R = (N2 * D - N * D2) * D;
  R -= Integer(2) * D1 * (N1 * D - N * D1);
  R -= Integer(2) * (N * N * N);
  R -= (N * D_sq).shifted_up(1);
  R -= Integer(alpha) * (D_sq * D);
  if (!R.is_zero()) {
    rep.fail({{"alpha", alpha}, {"residual_degree", *R.degree()}, {"residual_leading", R.leading().get_str()}});
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport pII_residual(const RationalSolution& w) { return pII_residual(w, w.n); }

RationalSolution backlund_next(const RationalSolution& w) {
  const IntPoly& N = w.numerator;
  const IntPoly& D = w.denominator;
  // 2w^2 + 2w' + z = E / D^2
  IntPoly E = Integer(2) * (N * N);
  E += Integer(2) * (derivative(N) * D - N * derivative(D));
  E += (D * D).shifted_up(1);
  if (E.is_zero()) {
    throw DegenerateDenominator("Backlund step from w_" + std::to_string(w.n) +
                                ": 2w^2 + 2w' + z vanishes identically");
  }
  IntPoly num = -(N * E) - Integer(2 * w.n + 1) * (D * D * D);
  IntPoly den = D * E;
  return make_rational(w.n + 1, std::move(num), std::move(den));
}

VerificationReport backlund_check(std::span<const YvRecord> records, long n_max) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("backlund", n_max);
  RationalSolution w = rational_solution(records, 0);
  for (long n = 0; n < n_max && static_cast<std::size_t>(n + 1) < records.size(); ++n) {
    w = backlund_next(w);
    RationalSolution expected = rational_solution(records, n + 1);
    if (!(w == expected)) {
      rep.fail({{"n_next", n + 1}, {"backlund_denominator_degree", *w.denominator.degree()},
                {"expected_denominator_degree", *expected.denominator.degree()}});
      break;
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

nlohmann::json to_json(const YvRecord& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["degree"] = yv_degree(r.n);
  j["residue_class"] = r.residue_class;
  auto& a = j["compressed"] = nlohmann::json::array();
  for (const auto& c : r.compressed) a.push_back(c.get_str());
  j["x_n"] = r.x_n.get_str();
  j["p_n"] = r.p_n;
  return j;
}

YvRecord record_from_json(const nlohmann::json& j) {
  const long n = j.at("n").get<long>();
  std::vector<Integer> a;
  for (const auto& s : j.at("compressed")) a.emplace_back(s.get<std::string>());
  YvRecord r = make_record(n, cube_expand(a, n));
  if (j.contains("degree") && j.at("degree").get<std::size_t>() != yv_degree(n)) {
    throw StructureViolation("record_from_json: degree field disagrees with n");
  }
  if (j.contains("x_n") && Integer(j.at("x_n").get<std::string>()) != r.x_n) {
    throw StructureViolation("record_from_json: x_n field disagrees with coefficients");
  }
  if (j.contains("p_n") && j.at("p_n").get<long>() != r.p_n) {
    throw StructureViolation("record_from_json: p_n field disagrees with x_n");
  }
  return r;
}

}  // namespace yv::gen
