#pragma once

#include "yv/gen.hpp"
#include "yv/report.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <vector>

namespace yv::series {

using exact::Rational;

/// sums[m] = sum over nonzero roots z of Q_n of z^-m, for 1 <= m <= max_m.
/// sums[0] is the number of nonzero roots.
struct PowerSumTable {
  long n = 0;
  std::vector<Rational> sums;

  long max_m() const { return static_cast<long>(sums.size()) - 1; }
  const Rational& at(long m) const { return sums.at(static_cast<std::size_t>(m)); }
};

/// Newton's identities on the reversed polynomial after the factor z is
/// removed. Q_0 and Q_1 give all-zero tables.
PowerSumTable inverse_power_sums(const gen::YvRecord& r, long max_m);

/// The closed forms for the sums over Q_n at m = 3, 6, 9; nullopt elsewhere.
std::optional<Rational> closed_form(long n, long m);
/// S(Q_{n-1}) - S(Q_n) at m = 3, 6, 9 for n >= 1; nullopt elsewhere.
std::optional<Rational> difference_form(long n, long m);

VerificationReport verify_closed_forms(std::span<const gen::YvRecord> records, long n_max);
VerificationReport verify_difference_relations(std::span<const gen::YvRecord> records, long n_max);
/// sums[m] == 0 for every m not divisible by 3, m <= m_max, n <= n_max.
VerificationReport verify_zero_sums(std::span<const gen::YvRecord> records, long n_max, long m_max);

/// What series_at_zero expands.
enum class SeriesKind {
  plain,      // w_n itself (n = 0 mod 3)
  plus_pole,  // u = w_n + 1/z (n = 1 mod 3)
  minus_pole  // u = w_n - 1/z (n = 2 mod 3)
};

SeriesKind series_kind(long n);

/// coefficients[m] is the coefficient of z^m, m = 0..order.
struct RationalSeries {
  long n = 0;
  SeriesKind kind = SeriesKind::plain;
  std::size_t order = 0;
  std::vector<Rational> coefficients;
  std::optional<std::size_t> imported;  // index taken from the power sums
};

/// Coefficient recursion of the ODE satisfied by w_n (or u) around 0. The
/// order-3 coefficient of the transformed cases is not determined by the
/// recursion and is taken from the exact power sums; ResonanceUnavailable
/// if records for n-1 and n are missing.
RationalSeries series_at_zero(std::span<const gen::YvRecord> records, long n, std::size_t order);

/// The same coefficients from power sums: a_m = S_{m+1}(Q_n) - S_{m+1}(Q_{n-1}).
std::vector<Rational> series_from_sums(std::span<const gen::YvRecord> records, long n, std::size_t order);

/// ODE residual coefficients of a series in its own equation, for orders
/// where every term is determined by the truncation.
std::vector<Rational> ode_residual(const RationalSeries& s);

/// Recursion vs power sums, every coefficient up to `order` except the
/// imported one, plus the ODE residual (which covers the imported one).
VerificationReport cross_check_series(std::span<const gen::YvRecord> records, long n, std::size_t order);

/// Polynomial in n, ascending coefficients, lowest degree through all points.
/// nullopt when no polynomial of degree <= max_degree fits.
std::optional<std::vector<Rational>> fit_polynomial(std::span<const long> xs, std::span<const Rational> ys,
                                                    std::size_t max_degree);
Rational evaluate_polynomial(std::span<const Rational> p, long x);
std::string polynomial_to_string(std::span<const Rational> p, char var = 'n');

struct ClassFit {
  int residue_class = 0;
  std::vector<Rational> polynomial;
  std::vector<long> fit_n;
  std::vector<long> held_out_n;
  std::vector<long> mispredicted;
};

/// Per residue class: fit on n <= n_max / 2, predict n_max / 2 < n <= n_max.
/// Throws FitFailure when the fit half needs degree above m/3 + 1, and
/// invalid_argument when m is not a positive multiple of 3 or the samples
/// cannot overdetermine the fit.
std::vector<ClassFit> fit_remark(std::span<const gen::YvRecord> records, long m, long n_max);
VerificationReport verify_remark_polynomiality(std::span<const gen::YvRecord> records, long m, long n_max);

/// "numerator/denominator" in decimal.
std::string rational_string(const Rational& q);
nlohmann::json to_json(std::span<const PowerSumTable> tables);

}  // namespace yv::series
