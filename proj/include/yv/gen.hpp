#pragma once

#include "yv/exactpoly/int_poly.hpp"
#include "yv/report.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <span>
#include <vector>

namespace yv::gen {

using exact::Integer;
using exact::IntPoly;

/// Degree n(n+1)/2 of Q_n.
std::size_t yv_degree(long n);
/// Index of the lowest cube-compressed coefficient, floor(n(n+1)/6).
std::size_t compressed_top(long n);
/// floor(n(n+1)/3), the 2-adic valuation of x_n.
long expected_valuation(long n);

/// Q_n together with its cube-compressed coefficients a_0..a_top
/// (Q_n = sum_s a_s z^(deg - 3s)), the lowest coefficient x_n and its 2-adic
/// valuation p_n.
struct YvRecord {
  long n = 0;
  IntPoly poly;
  std::vector<Integer> compressed;
  int residue_class = 0;
  Integer x_n;
  long p_n = 0;
};

/// Builds a record from Q_n and checks the structural invariants (monic,
/// degree, z^3 structure, a_0 = 1, x_n != 0). Throws StructureViolation.
YvRecord make_record(long n, IntPoly poly);

/// Q_{n+1} = (z Q_n^2 - 4(Q_n Q_n'' - Q_n'^2)) / Q_{n-1}, exactly.
IntPoly next_yv(const IntPoly& q_prev, const IntPoly& q_curr);

/// Records for n = 0..n_max. Every record invariant, including
/// p_n = floor(n(n+1)/3), is asserted; violations throw.
std::vector<YvRecord> generate(long n_max);

/// Same recurrence holding only the last two polynomials; `sink` sees each
/// record once, in order.
void generate_streaming(long n_max, const std::function<void(const YvRecord&)>& sink);

std::vector<Integer> cube_compress(const IntPoly& poly, long n);
IntPoly cube_expand(std::span<const Integer> compressed, long n);

VerificationReport check_structure(const YvRecord& r);
VerificationReport check_divisibility(const YvRecord& r);
VerificationReport valuation_checks(std::span<const YvRecord> records);
VerificationReport wronskian_check(std::span<const YvRecord> records, long n);
VerificationReport mod4_reduction(const YvRecord& r);
VerificationReport verify_irrationality_premises(const YvRecord& r);

/// w_n = numerator / denominator in canonical reduced form: gcd 1, integer
/// contents coprime, denominator leading coefficient positive. w_0 = 0/1.
struct RationalSolution {
  long n = 0;
  IntPoly numerator;
  IntPoly denominator;

  friend bool operator==(const RationalSolution&, const RationalSolution&) = default;
};

/// Reduces num/den to canonical form (no assumptions about the gcd).
RationalSolution make_rational(long n, IntPoly num, IntPoly den);

/// w_n = Q_{n-1}'/Q_{n-1} - Q_n'/Q_n for n >= 1, w_0 = 0 and w_{-n} = -w_n.
/// Throws UnexpectedCommonFactor if numerator and denominator share a factor.
RationalSolution rational_solution(std::span<const YvRecord> records, long n);

RationalSolution negate(const RationalSolution& w);

/// Numerator of w'' - 2w^3 - z w - alpha over denominator^3; pass iff it is
/// the zero polynomial.
VerificationReport pII_residual(const RationalSolution& w, long alpha);
VerificationReport pII_residual(const RationalSolution& w);

/// w_{n+1} = -w_n - (2n+1) / (2 w_n^2 + 2 w_n' + z), reduced.
RationalSolution backlund_next(const RationalSolution& w);

VerificationReport backlund_check(std::span<const YvRecord> records, long n_max);

nlohmann::json to_json(const YvRecord& r);
/// Rebuilds a record from its JSON document (decimal-string coefficients).
YvRecord record_from_json(const nlohmann::json& j);

}  // namespace yv::gen
