#include "yv/roots.hpp"

#include "yv/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

namespace yv::roots {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Real inf(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_inf(r.raw(), 1);
  return r;
}

Real ten_pow_neg(double digits, mpfr_prec_t prec) {
  Real r(prec);
  Real e(prec);
  mpfr_set_d(e.raw(), -digits, MPFR_RNDN);
  mpfr_exp10(r.raw(), e.raw(), MPFR_RNDN);
  return r;
}

// p(y) and p'(y) together.
void eval_with_derivative(std::span<const Real> c, const Complex& y, Complex& p, Complex& dp) {
  const mpfr_prec_t prec = y.prec();
  p = Complex(Real(c.back(), prec), Real(prec));
  dp = Complex(prec);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp *= y;
    dp += p;
    p *= y;
    p.re() += c[i];
  }
}

// sum |c_i| |y|^i
Real magnitude_scale(std::span<const Real> c, const Real& r) {
  Real acc(r.prec());
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= r;
    acc += mp::abs(c[i]);
  }
  return acc;
}

Real relative_residual(std::span<const Real> c, const Complex& y) {
  Complex p = evaluate(c, y);
  Real scale = magnitude_scale(c, y.abs());
  if (scale.is_zero()) return Real(0L, y.prec());
  return p.abs() / scale;
}

Real fujiwara_bound(std::span<const Integer> coeffs) {
  const mpfr_prec_t prec = 64;
  const std::size_t d = coeffs.size() - 1;
  Real lead(coeffs[d], prec);
  Real best(prec);
  for (std::size_t k = 1; k <= d; ++k) {
    const Integer& c = coeffs[d - k];
    if (sgn(c) == 0) continue;
    Real t = mp::abs(Real(c, prec) / lead);
    if (k == d) t /= 2;
    Real root(prec);
    mpfr_rootn_ui(root.raw(), t.raw(), static_cast<unsigned long>(k), MPFR_RNDU);
    best = mp::max(best, root);
  }
  best *= 2L;
  if (best.is_zero()) best = Real(1L, prec);
  return best;
}

// One precision stage of Aberth-Ehrlich. Returns true on convergence.
bool aberth_stage(std::span<const Real> c, std::vector<Complex>& y, long target_bits, int max_iterations,
                  int& iterations, Real& worst) {
  const std::size_t d = y.size();
  const mpfr_prec_t prec = y.front().prec();
  std::vector<bool> done(d, false);
  std::vector<Complex> step(d, Complex(prec));
  Complex p(prec), dp(prec);
  Real stall_best = inf(prec);
  int stall_count = 0;

  for (int it = 0; it < max_iterations; ++it) {
    ++iterations;
    Real worst_rel(prec);
    bool all_done = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) {
        step[k] = Complex(prec);
        continue;
      }
      eval_with_derivative(c, y[k], p, dp);
      if (p.re().is_zero() && p.im().is_zero()) {
        step[k] = Complex(prec);
        done[k] = true;
        continue;
      }
      Complex ratio = p / dp;
      Complex sum(prec);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == k) continue;
        sum += (y[k] - y[j]).inverse();
      }
      Complex denom(Real(1L, prec), Real(prec));
      denom -= ratio * sum;
      step[k] = ratio / denom;
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      y[k] -= step[k];
      Real mag = y[k].abs();
      Real rel = step[k].abs() / (mag.is_zero() ? Real(1L, prec) : mag);
      if (rel.exponent() < -target_bits) {
        done[k] = true;
      } else {
        all_done = false;
        worst_rel = mp::max(worst_rel, rel);
      }
    }
    worst = worst_rel;
    if (all_done) return true;
    // Rounding noise floor: corrections stopped shrinking well below
    // half precision.
    if (worst_rel < stall_best * Real(1L, prec) / 2L) {
      stall_best = worst_rel;
      stall_count = 0;
    } else if (++stall_count >= 6 && worst_rel.exponent() < -static_cast<long>(prec) / 2) {
      return true;
    }
  }
  return false;
}

std::vector<Complex> from_radius(std::size_t d, const Real& radius, mpfr_prec_t prec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::vector<Complex> y;
  y.reserve(d);
  Real two_pi = mp::pi(prec) * 2L;
  for (std::size_t k = 0; k < d; ++k) {
    Real theta(prec);
    double frac = (static_cast<double>(k) + 0.25 + 0.5 * jitter(rng)) / static_cast<double>(d);
    mpfr_set_d(theta.raw(), frac, MPFR_RNDN);
    theta *= two_pi;
    Real r(radius, prec);
    Real wobble(prec);
    mpfr_set_d(wobble.raw(), 1.0 - 0.05 * jitter(rng), MPFR_RNDN);
    r *= wobble;
    y.push_back(mp::polar(r, theta));
  }
  return y;
}

std::vector<Integer> expand_z(const ReducedPoly& p) {
  const std::size_t eps = p.zero_root ? 1 : 0;
  std::vector<Integer> c(3 * (p.y_coeffs.size() - 1) + eps + 1);
  for (std::size_t i = 0; i < p.y_coeffs.size(); ++i) c[3 * i + eps] = p.y_coeffs[i];
  return c;
}

struct Metadata {
  std::vector<Real> residuals;
  Real max_residual;
  Real min_separation;
};

Metadata measure(std::span<const Complex> roots, std::span<const Integer> z_coeffs, mpfr_prec_t prec) {
  auto c = to_reals(z_coeffs, prec);
  Metadata m{{}, Real(prec), inf(prec)};
  for (const auto& z : roots) {
    Real r = relative_residual(c, z);
    m.max_residual = mp::max(m.max_residual, r);
    m.residuals.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      Real d = (roots[i] - roots[j]).abs();
      if (d < m.min_separation) m.min_separation = d;
    }
  }
  return m;
}

Real max_modulus(std::span<const Complex> roots, mpfr_prec_t prec) {
  Real m(1L, prec);
  for (const auto& z : roots) m = mp::max(m, z.abs());
  return m;
}

void sort_roots(std::vector<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.re() < b.re()) return true;
    if (b.re() < a.re()) return false;
    return a.im() < b.im();
  });
}

// Greedy nearest-neighbour check that `image(i)` permutes the root set.
template <class Image>
std::optional<nlohmann::json> check_closure(std::span<const Complex> roots, Image image, const Real& tol) {
  const mpfr_prec_t prec = tol.prec();
  Real tol2 = tol * tol;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Complex t = image(roots[i]);
    std::size_t best = roots.size();
    Real best_d = inf(prec), second_d = inf(prec);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      Real d = (t - roots[j]).norm();
      if (d < best_d) {
        second_d = best_d;
        best_d = d;
        best = j;
      } else if (d < second_d) {
        second_d = d;
      }
    }
    if (best == roots.size() || best_d > tol2) {
      return nlohmann::json{{"root_index", i}, {"reason", "no image within tolerance"},
                            {"distance", mp::sqrt(best_d).to_string(6)}};
    }
    if (second_d <= tol2) {
      return nlohmann::json{{"root_index", i}, {"reason", "ambiguous match"}};
    }
    if (used[best]) {
      return nlohmann::json{{"root_index", i}, {"reason", "image already matched"}};
    }
    used[best] = true;
  }
  return std::nullopt;
}

}  // namespace

ReducedPoly cube_reduce(const gen::YvRecord& r) {
  auto a = gen::cube_compress(r.poly, r.n);
  ReducedPoly p;
  p.n = r.n;
  p.zero_root = r.n % 3 == 1;
  p.y_coeffs.assign(a.rbegin(), a.rend());
  return p;
}

mpfr_prec_t default_precision(long n) {
  return std::max<mpfr_prec_t>(128, 4 * static_cast<mpfr_prec_t>(gen::yv_degree(n)));
}

long default_tolerance_bits(mpfr_prec_t precision_bits) { return static_cast<long>(precision_bits / 2); }

Complex evaluate(std::span<const Real> coeffs, const Complex& z) {
  const mpfr_prec_t prec = z.prec();
  if (coeffs.empty()) return Complex(prec);
  Complex acc(Real(coeffs.back(), prec), Real(prec));
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc *= z;
    acc.re() += coeffs[i];
  }
  return acc;
}

std::vector<Real> to_reals(std::span<const Integer> coeffs, mpfr_prec_t prec) {
  std::vector<Real> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.emplace_back(c, prec);
  return out;
}

std::vector<Complex> find_roots(std::span<const Integer> coeffs_in, const SolverOptions& opts) {
  const mpfr_prec_t P = opts.precision_bits;
  if (P < 53) throw std::invalid_argument("find_roots: precision must be at least 53 bits");
  std::size_t lo = 0, hi = coeffs_in.size();
  while (hi > 0 && sgn(coeffs_in[hi - 1]) == 0) --hi;
  if (hi == 0) throw std::invalid_argument("find_roots: zero polynomial");
  while (sgn(coeffs_in[lo]) == 0) ++lo;
  std::span<const Integer> coeffs = coeffs_in.subspan(lo, hi - lo);

  std::vector<Complex> roots;
  for (std::size_t i = 0; i < lo; ++i) roots.emplace_back(P);
  const std::size_t d = coeffs.size() - 1;
  if (d == 0) return roots;

  std::vector<Complex> y;
  if (d == 1) {
    Real v = Real(coeffs[0], 2 * P) / Real(coeffs[1], 2 * P);
    y.emplace_back(-v, Real(2 * P));
  } else {
    const mpfr_prec_t low = 64;
    y = from_radius(d, fujiwara_bound(coeffs), low, opts.seed);
    int iterations = 0;
    Real worst(low);
    if (P > low) {
      auto c = to_reals(coeffs, low);
      aberth_stage(c, y, 40, opts.max_iterations, iterations, worst);
      for (auto& v : y) v = Complex(v, P);
    }
    auto c = to_reals(coeffs, P);
    if (!aberth_stage(c, y, P - P / 8, opts.max_iterations, iterations, worst)) {
      throw NoConvergence("Aberth iteration did not converge for degree " + std::to_string(d), iterations,
                          worst.to_string(6));
    }
    // Two Newton steps at doubled precision.
    auto c2 = to_reals(coeffs, 2 * P);
    Complex p(2 * P), dp(2 * P);
    for (auto& v : y) {
      v = Complex(v, 2 * P);
      for (int s = 0; s < 2; ++s) {
        eval_with_derivative(c2, v, p, dp);
        if (dp.re().is_zero() && dp.im().is_zero()) break;
        v -= p / dp;
      }
    }
  }

  auto c = to_reals(coeffs, P);
  const Real threshold = mp::pow2(-default_tolerance_bits(P), P);
  for (auto& v : y) {
    Complex r(v, P);
    Real res = relative_residual(c, r);
    if (res > threshold) {
      throw NoConvergence("root residual above threshold after polishing", opts.max_iterations,
                          res.to_string(6));
    }
    roots.push_back(std::move(r));
  }
  return roots;
}

std::vector<Complex> find_roots(const ReducedPoly& p, const SolverOptions& opts) {
  return find_roots(std::span<const Integer>(p.y_coeffs), opts);
}

RootSet make_root_set(const gen::YvRecord& r, std::vector<Complex> roots, mpfr_prec_t precision_bits) {
  RootSet rs;
  rs.n = r.n;
  rs.precision_bits = precision_bits;
  for (auto& z : roots) z = Complex(z, precision_bits);
  sort_roots(roots);
  rs.roots = std::move(roots);
  rs.includes_zero = std::any_of(rs.roots.begin(), rs.roots.end(),
                                 [](const Complex& z) { return z.re().is_zero() && z.im().is_zero(); });
  auto m = measure(rs.roots, r.poly.coeffs(), precision_bits);
  rs.residuals = std::move(m.residuals);
  rs.max_residual = std::move(m.max_residual);
  rs.min_separation = std::move(m.min_separation);
  return rs;
}

RootSet lift_cube_roots(std::span<const Complex> y_roots, const ReducedPoly& p, mpfr_prec_t P) {
  const mpfr_prec_t W = 2 * P;
  std::vector<Complex> z;
  z.reserve(3 * y_roots.size() + 1);
  Real third_turn = mp::pi(W) * 2L / 3L;
  for (const auto& yr : y_roots) {
    Complex y(yr, W);
    Real radius = mp::cbrt(y.abs());
    Real theta = mp::atan2(y.im(), y.re()) / 3L;
    for (long k = 0; k < 3; ++k) {
      z.push_back(Complex(mp::polar(radius, theta + third_turn * k), P));
    }
  }
  if (p.zero_root) z.emplace_back(P);

  RootSet rs;
  rs.n = p.n;
  rs.precision_bits = P;
  rs.includes_zero = p.zero_root;
  sort_roots(z);
  rs.roots = std::move(z);
  auto zc = expand_z(p);
  auto m = measure(rs.roots, zc, P);
  rs.residuals = std::move(m.residuals);
  rs.max_residual = std::move(m.max_residual);
  rs.min_separation = std::move(m.min_separation);

  const long tol_bits = default_tolerance_bits(P);
  if (rs.roots.size() != gen::yv_degree(p.n)) {
    throw CertificationFailure("lifted root count " + std::to_string(rs.roots.size()) + " != degree of Q_" +
                               std::to_string(p.n));
  }
  if (rs.max_residual > mp::pow2(-tol_bits, P)) {
    throw CertificationFailure("lifted residual " + rs.max_residual.to_string(6) + " above threshold");
  }
  if (rs.roots.size() > 1 && rs.min_separation <= mp::pow2(-tol_bits, P) * max_modulus(rs.roots, P)) {
    throw CertificationFailure("roots of Q_" + std::to_string(p.n) + " are not separated");
  }
  return rs;
}

RootSet compute_roots(const gen::YvRecord& r, const SolverOptions& opts) {
  ReducedPoly p = cube_reduce(r);
  auto y = find_roots(p, opts);
  return lift_cube_roots(y, p, opts.precision_bits);
}

VerificationReport certify(const RootSet& rs, const gen::YvRecord& r, long tolerance_bits) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("roots", r.n);
  const mpfr_prec_t P = rs.precision_bits;
  if (tolerance_bits <= 0) tolerance_bits = default_tolerance_bits(P);
  const Real eps = mp::pow2(-tolerance_bits, P);
  const Real scale = max_modulus(rs.roots, P);
  const Real tol = eps * scale;

  if (rs.roots.size() != gen::yv_degree(r.n)) {
    rep.fail({{"check", "count"}, {"count", rs.roots.size()}, {"expected", gen::yv_degree(r.n)}});
  }
  auto m = measure(rs.roots, r.poly.coeffs(), P);
  if (m.max_residual > eps) {
    rep.fail({{"check", "residual"}, {"max_residual", m.max_residual.to_string(6)}});
  }
  if (rs.roots.size() > 1 && m.min_separation <= tol) {
    rep.fail({{"check", "separation"}, {"min_separation", m.min_separation.to_string(6)}});
  }

  Complex omega = mp::polar(Real(1L, P), mp::pi(P) * 2L / 3L);
  if (auto w = check_closure(rs.roots, [&](const Complex& z) { return z * omega; }, tol)) {
    (*w)["check"] = "omega_closure";
    rep.fail(*w);
  }
  if (auto w = check_closure(rs.roots, [](const Complex& z) { return z.conj(); }, tol)) {
    (*w)["check"] = "conjugation_closure";
    rep.fail(*w);
  }

  if (rs.roots.size() >= 2) {
    Complex total(P);
    Real mass(P);
    for (const auto& z : rs.roots) {
      total += z;
      mass += z.abs();
    }
    if (total.abs() > eps * mass) rep.fail({{"check", "root_sum"}, {"sum_abs", total.abs().to_string(6)}});
  }

  // No real nonzero root sits near p/q with q <= 64.
  int real_roots = 0;
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    const Complex& z = rs.roots[i];
    if (mp::abs(z.im()) > tol || mp::abs(z.re()) <= tol) continue;
    ++real_roots;
    for (long q = 1; q <= 64; ++q) {
      Real xq = z.re() * q;
      Integer num = mp::round_to_integer(xq);
      Real diff = mp::abs(z.re() - Real(num, P) / q);
      if (diff < eps) {
        rep.fail({{"check", "near_rational"}, {"root_index", i}, {"p", num.get_str()}, {"q", q}});
        break;
      }
    }
  }
  rep.note = "real nonzero roots checked against small rationals: " + std::to_string(real_roots);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

VerificationReport newton_crosscheck(const RootSet& rs, const gen::YvRecord& r, std::span<const int> powers,
                                     double digits) {
  auto t0 = Clock::now();
  VerificationReport rep = make_report("newton_crosscheck", r.n);
  const mpfr_prec_t P = rs.precision_bits;
  int max_m = 0;
  for (int m : powers) max_m = std::max(max_m, m);

  exact::IntPoly core = r.poly.is_zero() ? r.poly : r.poly.shifted_down(r.poly.low_order());
  std::vector<exact::Rational> exact_sums(static_cast<std::size_t>(max_m) + 1);
  if (*core.degree() >= 1) {
    exact_sums = exact::newton_power_sums(exact::reverse_nonzero(core), static_cast<std::size_t>(max_m));
  }

  const Real limit = ten_pow_neg(digits, P);
  nlohmann::json dev = nlohmann::json::object();
  for (int m : powers) {
    Complex acc(P);
    Real mass(P);
    for (const auto& z : rs.roots) {
      if (z.re().is_zero() && z.im().is_zero()) continue;
      Complex inv = z.inverse();
      Complex t = inv;
      for (int k = 1; k < m; ++k) t *= inv;
      mass += t.abs();
      acc += t;
    }
    Real exact_value(exact_sums[static_cast<std::size_t>(m)], P);
    Complex diff = acc - Complex(exact_value, Real(P));
    Real denom = exact_value.is_zero() ? mass : mp::abs(exact_value);
    Real rel = denom.is_zero() ? diff.abs() : diff.abs() / denom;
    dev[std::to_string(m)] = rel.to_string(4);
    if (rel >= limit) {
      rep.fail({{"m", m}, {"exact", exact_sums[static_cast<std::size_t>(m)].get_str()},
                {"numeric", acc.re().to_string(30)}, {"relative_deviation", rel.to_string(6)}});
    }
  }
  rep.note = "relative deviations " + dev.dump();
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::string to_csv(const RootSet& rs) {
  std::ostringstream os;
  os << "n,re,im,residual\n";
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    os << rs.n << ',' << rs.roots[i].re().to_string() << ',' << rs.roots[i].im().to_string() << ','
       << (i < rs.residuals.size() ? rs.residuals[i].to_string(6) : std::string("nan")) << '\n';
  }
  return os.str();
}

std::string to_svg(const RootSet& rs) {
  // Fixed presentation: 640x640 canvas, 40px margin, radius-scaled square
  // view, dot radius 4.
  constexpr double kSize = 640.0, kMargin = 40.0, kDot = 4.0;
  double radius = 1.0;
  for (const auto& z : rs.roots) radius = std::max(radius, z.abs().to_double());
  radius *= 1.1;
  const double span = kSize - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x + radius) / (2 * radius) * span; };
  auto py = [&](double y) { return kMargin + (radius - y) / (2 * radius) * span; };

  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << px(-radius) << "\" y1=\"" << py(0) << "\" x2=\"" << px(radius) << "\" y2=\"" << py(0)
     << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(-radius) << "\" x2=\"" << px(0) << "\" y2=\"" << py(radius)
     << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"" << kMargin / 2 + 5
     << "\" font-family=\"sans-serif\" font-size=\"16\">Roots of Q_" << rs.n << " (" << rs.roots.size()
     << " roots, |z| &lt;= " << std::setprecision(4) << radius / 1.1 << ")</text>\n";
  os << std::setprecision(3);
  for (const auto& z : rs.roots) {
    os << "<circle cx=\"" << px(z.re().to_double()) << "\" cy=\"" << py(z.im().to_double()) << "\" r=\"" << kDot
       << "\" fill=\"#1f4e99\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace yv::roots
