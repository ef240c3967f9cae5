#include "yv/relations.hpp"

#include "yv/errors.hpp"

#include <chrono>
#include <random>

namespace yv::relations {

namespace {

using Clock = std::chrono::steady_clock;
using mp::Complex;
using mp::Real;
using exact::Integer;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Rational zero_fn(long) { return 0; }

// Taylor coefficients F^(i)(a)/i!, i = 0..count-1, reduced in the ring.
std::vector<QuotientElement> taylor(const QuotientRing& ring, const IntPoly& F, int count) {
  std::vector<QuotientElement> out;
  out.reserve(static_cast<std::size_t>(count));
  const auto& f = F.coeffs();
  Integer binom;
  for (int i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (ui >= f.size()) {
      out.push_back(ring.zero());
      continue;
    }
    std::vector<Integer> c(f.size() - ui);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (sgn(f[j + ui]) == 0) continue;
      mpz_bin_uiui(binom.get_mpz_t(), j + ui, ui);
      c[j] = binom * f[j + ui];
    }
    out.push_back(ring.element(IntPoly(std::move(c))));
  }
  return out;
}

// Coefficients of num(t)/den(t) to order `count`, given den_0^-1.
std::vector<QuotientElement> series_divide(const std::vector<QuotientElement>& num,
                                           const std::vector<QuotientElement>& den,
                                           const QuotientElement& den0_inv, int count) {
  std::vector<QuotientElement> out;
  for (int m = 0; m < count; ++m) {
    QuotientElement acc = num[static_cast<std::size_t>(m)];
    for (int i = 1; i <= m; ++i) acc -= den[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(m - i)];
    out.push_back(acc * den0_inv);
  }
  return out;
}

std::vector<QuotientElement> signed_sums(const QuotientRing& ring, const std::vector<QuotientElement>& f,
                                         int max_power) {
  std::vector<QuotientElement> s{ring.zero()};
  for (int p = 1; p <= max_power; ++p) {
    QuotientElement v = f[static_cast<std::size_t>(p - 1)];
    s.push_back(p % 2 == 1 ? v : -v);
  }
  return s;
}

std::string truncate(std::string s, std::size_t limit = 240) {
  if (s.size() > limit) s = s.substr(0, limit) + "...";
  return s;
}

Real ten_pow_neg(double digits, mpfr_prec_t prec) {
  Real r(prec), e(prec);
  mpfr_set_d(e.raw(), -digits, MPFR_RNDN);
  mpfr_exp10(r.raw(), e.raw(), MPFR_RNDN);
  return r;
}

const std::vector<Family>& family_table() {
  static const std::vector<Family> table = {
      {"theorem.prev.p1", Group::theorem, Host::prev, 1, 1, -1, zero_fn, zero_fn, true},
      {"theorem.prev.p2", Group::theorem, Host::prev, 2, 1, -1, [](long) { return q(1, 6); }, zero_fn, true},
      {"theorem.prev.p3", Group::theorem, Host::prev, 3, 1, -1, zero_fn, [](long n) { return q(-(n + 1), 4); },
       true},
      {"theorem.prev.p4", Group::theorem, Host::prev, 4, 1, -1, zero_fn, zero_fn, false},
      {"theorem.prev.p5", Group::theorem, Host::prev, 5, 1, -1,
       [](long n) { return Rational(q(n + 1, 24) - q(1, 36)); }, zero_fn, true},
      {"theorem.curr.p1", Group::theorem, Host::curr, 1, -1, 1, zero_fn, zero_fn, true},
      {"theorem.curr.p2", Group::theorem, Host::curr, 2, -1, 1, [](long) { return q(-1, 6); }, zero_fn, true},
      {"theorem.curr.p3", Group::theorem, Host::curr, 3, -1, 1, zero_fn, [](long n) { return q(-(n - 1), 4); },
       true},
      {"theorem.curr.p4", Group::theorem, Host::curr, 4, -1, 1, zero_fn, zero_fn, false},
      {"theorem.curr.p5", Group::theorem, Host::curr, 5, -1, 1,
       [](long n) { return Rational(q(n - 1, 24) + q(1, 36)); }, zero_fn, true},
      {"kudryashov.curr.p2", Group::kudryashov, Host::curr, 2, 1, 0, [](long) { return q(-1, 12); }, zero_fn,
       true},
      {"kudryashov.curr.p3", Group::kudryashov, Host::curr, 3, 1, 0, zero_fn, zero_fn, true},
      {"kudryashov.curr.p5", Group::kudryashov, Host::curr, 5, 1, 0, [](long) { return q(-1, 144); }, zero_fn,
       true},
      {"corollary.prev.p2", Group::corollary, Host::prev, 2, 0, 1, [](long) { return q(-1, 4); }, zero_fn, true},
      {"corollary.prev.p3", Group::corollary, Host::prev, 3, 0, 1, zero_fn, [](long n) { return q(n + 1, 4); },
       true},
      {"corollary.prev.p5", Group::corollary, Host::prev, 5, 0, 1,
       [](long n) { return Rational(q(1, 48) - q(n + 1, 24)); }, zero_fn, true},
      {"corollary.curr.p2", Group::corollary, Host::curr, 2, 0, 1, [](long) { return q(-1, 4); }, zero_fn, true},
      {"corollary.curr.p3", Group::corollary, Host::curr, 3, 0, 1, zero_fn, [](long n) { return q(-(n - 1), 4); },
       true},
      {"corollary.curr.p5", Group::corollary, Host::curr, 5, 0, 1,
       [](long n) { return Rational(q(n - 1, 24) + q(1, 48)); }, zero_fn, true},
  };
  return table;
}

const roots::RootSet& root_set(const Inputs& in, long n) {
  if (n < 0 || static_cast<std::size_t>(n) >= in.root_sets.size() || in.root_sets[n].n != n) {
    throw std::out_of_range("root set for n = " + std::to_string(n) + " is not available");
  }
  return in.root_sets[n];
}

std::vector<RelationReport> verify_group(const Inputs& in, long n, Mode mode, Group g) {
  if (n < 1) throw std::invalid_argument("relations need n >= 1");
  if (mode == Mode::exact) return evaluate(exact_level(in.records, n), g);
  return evaluate(numeric_level(root_set(in, n - 1), root_set(in, n)), g, in.tolerance_digits);
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "numeric"; }

std::string to_string(Group g) {
  switch (g) {
    case Group::theorem: return "theorem";
    case Group::kudryashov: return "kudryashov";
    case Group::corollary: return "corollary";
  }
  return "unknown";
}

std::span<const Family> families() { return family_table(); }

std::vector<const Family*> families(Group g) {
  std::vector<const Family*> out;
  for (const auto& f : family_table()) {
    if (f.group == g) out.push_back(&f);
  }
  return out;
}

std::vector<QuotientElement> cross_sums(const QuotientRing& ring, const IntPoly& target, int max_power) {
  if (target.is_zero()) throw std::invalid_argument("cross_sums: zero target");
  if (*target.degree() == 0) return std::vector<QuotientElement>(static_cast<std::size_t>(max_power) + 1, ring.zero());
  // target'(a+t)/target(a+t) = sum_m (-1)^m S_{m+1} t^m
  auto c = taylor(ring, target, max_power + 1);
  std::vector<QuotientElement> d;
  for (int i = 0; i < max_power; ++i) d.push_back(c[static_cast<std::size_t>(i + 1)] * Rational(i + 1));
  QuotientElement inv = c[0].inverse();
  return signed_sums(ring, series_divide(d, c, inv, max_power), max_power);
}

std::vector<QuotientElement> self_sums(const QuotientRing& ring, const IntPoly& host, int max_power) {
  auto c = taylor(ring, host, max_power + 2);
  if (!c[0].is_zero()) throw std::invalid_argument("self_sums: ring modulus must divide the host");
  // host(a+t) = t g(t); sum_{k != j} 1/(a + t - z_k) = g'(t)/g(t).
  std::vector<QuotientElement> g(c.begin() + 1, c.end());
  std::vector<QuotientElement> dg;
  for (int i = 0; i < max_power; ++i) dg.push_back(g[static_cast<std::size_t>(i + 1)] * Rational(i + 1));
  QuotientElement inv = g[0].inverse();
  return signed_sums(ring, series_divide(dg, g, inv, max_power), max_power);
}

QuotientElement cross_sum_residue(const QuotientRing& host_ring, const IntPoly& target, int p) {
  if (p < 1) throw std::invalid_argument("cross_sum_residue: power must be positive");
  return cross_sums(host_ring, target, p)[static_cast<std::size_t>(p)];
}

QuotientElement cross_sum_residue(const IntPoly& host, const IntPoly& target, int p) {
  return cross_sum_residue(QuotientRing(host), target, p);
}

QuotientElement self_sum_residue(const QuotientRing& host_ring, const IntPoly& host, int p) {
  if (p < 1) throw std::invalid_argument("self_sum_residue: power must be positive");
  return self_sums(host_ring, host, p)[static_cast<std::size_t>(p)];
}

QuotientElement self_sum_residue(const IntPoly& host, int p) { return self_sum_residue(QuotientRing(host), host, p); }

nlohmann::json to_json(const RelationReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"family", r.family},
                   {"mode", to_string(r.mode)},
                   {"status", to_string(r.status)},
                   {"asserted", r.asserted}};
  if (!r.worst_deviation.empty()) j["worst_deviation"] = r.worst_deviation;
  if (!r.residue.empty()) j["residue"] = r.residue;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

ExactLevel exact_level(std::span<const gen::YvRecord> records, long n) {
  if (n < 1 || static_cast<std::size_t>(n) >= records.size()) {
    throw std::out_of_range("exact_level: records for n-1 and n are required");
  }
  const IntPoly& qp = records[n - 1].poly;
  const IntPoly& qc = records[n].poly;
  ExactLevel level;
  level.n = n;
  auto build = [](const IntPoly& host, const IntPoly& other) -> std::optional<ExactHostSums> {
    if (*host.degree() == 0) return std::nullopt;
    QuotientRing ring(host);
    auto self = self_sums(ring, host, kMaxPower);
    auto cross = cross_sums(ring, other, kMaxPower);
    return ExactHostSums{std::move(ring), std::move(self), std::move(cross)};
  };
  level.prev = build(qp, qc);
  level.curr = build(qc, qp);
  return level;
}

std::vector<RelationReport> evaluate(const ExactLevel& level, Group g) {
  std::vector<RelationReport> out;
  for (const Family* f : families(g)) {
    RelationReport r;
    r.n = level.n;
    r.family = f->id;
    r.mode = Mode::exact;
    r.asserted = f->asserted;
    const auto& host = f->base == Host::prev ? level.prev : level.curr;
    if (!host) {
      r.note = "vacuous: host polynomial has no roots";
      if (!f->asserted) r.status = Status::skipped;
      out.push_back(std::move(r));
      continue;
    }
    const auto p = static_cast<std::size_t>(f->power);
    QuotientElement lhs = host->ring.zero();
    if (f->coeff_self != 0) lhs += host->self[p] * Rational(f->coeff_self);
    if (f->coeff_cross != 0) lhs += host->cross[p] * Rational(f->coeff_cross);
    if (!f->asserted) {
      r.status = Status::skipped;
      r.residue = truncate(lhs.residue().to_string('a'));
      r.note = "reported only, no reference value";
    } else {
      QuotientElement rhs = host->ring.root() * f->root_coeff(level.n) + host->ring.constant(f->constant(level.n));
      QuotientElement diff = lhs - rhs;
      if (!diff.is_zero()) {
        r.status = Status::fail;
        r.residue = truncate(diff.residue().to_string('a'));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

NumericHostSums numeric_host_sums(const roots::RootSet& base, const roots::RootSet& other) {
  NumericHostSums s;
  const mpfr_prec_t P = base.precision_bits;
  auto fresh_c = [&] {
    std::array<Complex, kMaxPower + 1> a;
    for (auto& x : a) x = Complex(P);
    return a;
  };
  auto fresh_r = [&] {
    std::array<Real, kMaxPower + 1> a;
    for (auto& x : a) x = Real(P);
    return a;
  };
  auto accumulate = [](const Complex& d, std::array<Complex, kMaxPower + 1>& sum,
                       std::array<Real, kMaxPower + 1>& mass) {
    Complex inv = d.inverse();
    Complex t = inv;
    Real m = inv.abs();
    Real mp = m;
    for (int p = 1; p <= kMaxPower; ++p) {
      sum[p] += t;
      mass[p] += mp;
      t *= inv;
      mp *= m;
    }
  };
  for (std::size_t j = 0; j < base.roots.size(); ++j) {
    const Complex& z = base.roots[j];
    s.points.push_back(z);
    auto self = fresh_c(), cross = fresh_c();
    auto self_mass = fresh_r(), cross_mass = fresh_r();
    for (std::size_t k = 0; k < base.roots.size(); ++k) {
      if (k != j) accumulate(z - base.roots[k], self, self_mass);
    }
    for (const auto& w : other.roots) accumulate(z - w, cross, cross_mass);
    s.self.push_back(std::move(self));
    s.cross.push_back(std::move(cross));
    s.self_mass.push_back(std::move(self_mass));
    s.cross_mass.push_back(std::move(cross_mass));
  }
  return s;
}

NumericLevel numeric_level(const roots::RootSet& prev, const roots::RootSet& curr) {
  return {curr.n, numeric_host_sums(prev, curr), numeric_host_sums(curr, prev)};
}

std::vector<RelationReport> evaluate(const NumericLevel& level, Group g, double tolerance_digits) {
  std::vector<RelationReport> out;
  for (const Family* f : families(g)) {
    RelationReport r;
    r.n = level.n;
    r.family = f->id;
    r.mode = Mode::numeric;
    r.asserted = f->asserted;
    const NumericHostSums& host = f->base == Host::prev ? level.prev : level.curr;
    if (host.points.empty()) {
      r.note = "vacuous: host polynomial has no roots";
      if (!f->asserted) r.status = Status::skipped;
      out.push_back(std::move(r));
      continue;
    }
    const mpfr_prec_t P = host.points.front().prec();
    const auto p = static_cast<std::size_t>(f->power);
    const Real rc(f->root_coeff(level.n), P);
    const Real c0(f->constant(level.n), P);
    Real worst(P), largest(P);
    for (std::size_t j = 0; j < host.points.size(); ++j) {
      Complex lhs(P);
      Real scale(P);
      if (f->coeff_self != 0) {
        lhs += host.self[j][p] * Real(f->coeff_self, P);
        scale += host.self_mass[j][p];
      }
      if (f->coeff_cross != 0) {
        lhs += host.cross[j][p] * Real(f->coeff_cross, P);
        scale += host.cross_mass[j][p];
      }
      largest = mp::max(largest, lhs.abs());
      if (!f->asserted) continue;
      Complex rhs = host.points[j] * rc;
      rhs.re() += c0;
      Real diff = (lhs - rhs).abs();
      scale += rhs.abs();
      Real dev = scale.is_zero() ? diff : diff / scale;
      worst = mp::max(worst, dev);
    }
    if (!f->asserted) {
      r.status = Status::skipped;
      r.note = "reported only, max |lhs| = " + largest.to_string(8);
    } else {
      r.worst_deviation = worst.to_string(6);
      if (!(worst < ten_pow_neg(tolerance_digits, P))) r.status = Status::fail;
    }
    out.push_back(std::move(r));
  }
  return out;
}

VerificationReport mode_agreement(const ExactLevel& exact, const NumericLevel& numeric, double tolerance_digits) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("relations_agreement", exact.n);
  Real worst(53);
  for (const Family& f : family_table()) {
    const auto& eh = f.base == Host::prev ? exact.prev : exact.curr;
    const NumericHostSums& nh = f.base == Host::prev ? numeric.prev : numeric.curr;
    if (!eh || nh.points.empty()) {
      if (eh.has_value() != !nh.points.empty()) rep.fail({{"family", f.id}, {"reason", "host root count differs"}});
      continue;
    }
    const mpfr_prec_t P = nh.points.front().prec();
    const auto p = static_cast<std::size_t>(f.power);
    QuotientElement lhs = eh->ring.zero();
    if (f.coeff_self != 0) lhs += eh->self[p] * Rational(f.coeff_self);
    if (f.coeff_cross != 0) lhs += eh->cross[p] * Rational(f.coeff_cross);
    std::vector<Real> coeffs;
    for (const auto& c : lhs.residue().coeffs()) coeffs.emplace_back(c, P);
    const Real limit = ten_pow_neg(tolerance_digits, P);
    for (std::size_t j = 0; j < nh.points.size(); ++j) {
      Complex value = roots::evaluate(coeffs, nh.points[j]);
      Complex num(P);
      Real scale = value.abs();
      if (f.coeff_self != 0) {
        num += nh.self[j][p] * Real(f.coeff_self, P);
        scale += nh.self_mass[j][p];
      }
      if (f.coeff_cross != 0) {
        num += nh.cross[j][p] * Real(f.coeff_cross, P);
        scale += nh.cross_mass[j][p];
      }
      Real diff = (value - num).abs();
      Real dev = scale.is_zero() ? diff : diff / scale;
      worst = mp::max(worst, dev);
      if (!(dev < limit)) rep.fail({{"family", f.id}, {"root_index", j}, {"deviation", dev.to_string(6)}});
    }
  }
  rep.note = "worst deviation " + worst.to_string(6);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::vector<RelationReport> verify_theorem(const Inputs& in, long n, Mode mode) {
  return verify_group(in, n, mode, Group::theorem);
}

std::vector<RelationReport> verify_kudryashov(const Inputs& in, long n, Mode mode) {
  return verify_group(in, n, mode, Group::kudryashov);
}

std::vector<RelationReport> verify_corollary(const Inputs& in, long n, Mode mode) {
  return verify_group(in, n, mode, Group::corollary);
}

std::vector<Complex> pole_series(const roots::RootSet& prev, const roots::RootSet& curr, std::size_t j, int M) {
  const mpfr_prec_t P = prev.precision_bits;
  const Complex& w = prev.roots.at(j);
  std::vector<Complex> self(static_cast<std::size_t>(M) + 2, Complex(P));
  std::vector<Complex> cross(static_cast<std::size_t>(M) + 2, Complex(P));
  auto add = [&](const Complex& d, std::vector<Complex>& sum) {
    Complex inv = d.inverse();
    Complex t = inv;
    for (int p = 1; p <= M + 1; ++p) {
      sum[static_cast<std::size_t>(p)] += t;
      t *= inv;
    }
  };
  for (std::size_t k = 0; k < prev.roots.size(); ++k) {
    if (k != j) add(w - prev.roots[k], self);
  }
  for (const auto& z : curr.roots) add(w - z, cross);
  std::vector<Complex> a;
  for (int m = 0; m <= M; ++m) {
    Complex v = self[static_cast<std::size_t>(m + 1)] - cross[static_cast<std::size_t>(m + 1)];
    a.push_back(m % 2 == 0 ? v : -v);
  }
  return a;
}

VerificationReport pole_series_check(const roots::RootSet& prev, const roots::RootSet& curr, long n,
                                     double tolerance_digits) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("poleseries", n);
  if (prev.roots.empty()) {
    rep.note = "vacuous: Q_{n-1} has no roots";
    return rep;
  }
  const mpfr_prec_t P = prev.precision_bits;
  const Real limit = ten_pow_neg(tolerance_digits, P);
  const Real a2(q(-(n + 1), 4), P);
  const Real c4(Rational(q(n + 1, 24) - q(1, 36)), P);
  Real worst(P), a3_max(P);
  for (std::size_t j = 0; j < prev.roots.size(); ++j) {
    const Complex& w = prev.roots[j];
    auto a = pole_series(prev, curr, j, 4);
    Complex e1 = w * Real(q(-1, 6), P);
    Complex e2(a2, Real(P));
    Complex e4 = w * c4;
    const std::array<Real, 4> dev = {a[0].abs(), (a[1] - e1).abs(), (a[2] - e2).abs(), (a[4] - e4).abs()};
    const std::array<int, 4> which = {0, 1, 2, 4};
    for (std::size_t i = 0; i < dev.size(); ++i) {
      worst = mp::max(worst, dev[i]);
      if (!(dev[i] < limit)) {
        rep.fail({{"root_index", j}, {"coefficient", which[i]}, {"deviation", dev[i].to_string(6)}});
      }
    }
    a3_max = mp::max(a3_max, a[3].abs());
  }
  rep.note = "worst deviation " + worst.to_string(6) + "; a_3 reported only, max |a_3| = " + a3_max.to_string(8);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport derivative_identity_check(const roots::RootSet& host_roots, const gen::YvRecord& target,
                                             const roots::RootSet& target_roots, std::uint64_t seed) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("derivative_identity", target.n);
  if (host_roots.roots.empty()) {
    rep.note = "vacuous: host has no roots";
    return rep;
  }
  const mpfr_prec_t P = host_roots.precision_bits;
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(target.n));
  const std::size_t j = static_cast<std::size_t>(rng() % host_roots.roots.size());
  const Complex& a = host_roots.roots[j];

  auto c = roots::to_reals(target.poly.coeffs(), P);
  auto dc = roots::to_reals(exact::derivative(target.poly).coeffs(), P);
  auto log_derivative = [&](const Complex& x) { return roots::evaluate(dc, x) / roots::evaluate(c, x); };

  const Real h = mp::pow2(-static_cast<long>(P) / 4, P);
  Complex ap = a, am = a;
  ap.re() += h;
  am.re() -= h;
  Complex fd = log_derivative(ap) - log_derivative(am);
  fd *= Real(1L, P) / (h * 2L);

  Complex sum(P);
  for (const auto& z : target_roots.roots) {
    Complex inv = (a - z).inverse();
    sum -= inv * inv;
  }
  Real dev = (fd - sum).abs() / mp::max(Real(1L, P), sum.abs());
  rep.note = "root index " + std::to_string(j) + ", deviation " + dev.to_string(6);
  if (!(dev < mp::pow2(-static_cast<long>(P) / 3, P))) {
    rep.fail({{"root_index", j}, {"deviation", dev.to_string(6)}});
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

}  // namespace yv::relations
