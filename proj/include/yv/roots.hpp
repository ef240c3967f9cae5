#pragma once

#include "yv/gen.hpp"
#include "yv/mpfloat.hpp"
#include "yv/report.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace yv::roots {

using exact::Integer;
using mp::Complex;
using mp::Real;

/// Q_n = z^eps R_n(z^3). y_coeffs holds R_n in ascending powers of y.
struct ReducedPoly {
  long n = 0;
  std::vector<Integer> y_coeffs;
  bool zero_root = false;
};

ReducedPoly cube_reduce(const gen::YvRecord& r);

/// max(128, 4 * degree(Q_n)) bits.
mpfr_prec_t default_precision(long n);

struct SolverOptions {
  mpfr_prec_t precision_bits = 256;
  std::uint64_t seed = 1;
  int max_iterations = 2000;
};

/// All roots of the integer polynomial with ascending coefficients `coeffs`
/// by Aberth-Ehrlich iteration (Fujiwara-radius start, seeded angular
/// perturbation), followed by two Newton steps at doubled precision.
/// Results are rounded to precision_bits. Throws NoConvergence.
std::vector<Complex> find_roots(std::span<const Integer> coeffs, const SolverOptions& opts);
std::vector<Complex> find_roots(const ReducedPoly& p, const SolverOptions& opts);

struct RootSet {
  long n = 0;
  std::vector<Complex> roots;
  std::vector<Real> residuals;  // |Q_n(z)| / sum |q_i| |z|^i per root
  mpfr_prec_t precision_bits = 0;
  Real max_residual;
  Real min_separation;
  bool includes_zero = false;
};

/// log2 of the certification threshold: residuals and closure distances
/// must stay below 2^-(P/2) (relative).
long default_tolerance_bits(mpfr_prec_t precision_bits);

/// Each y-root contributes its three cube roots; 0 is appended when Q_n has
/// the factor z. Throws CertificationFailure on residual or separation
/// failure.
RootSet lift_cube_roots(std::span<const Complex> y_roots, const ReducedPoly& p,
                        mpfr_prec_t precision_bits);

/// cube_reduce + find_roots + lift_cube_roots.
RootSet compute_roots(const gen::YvRecord& r, const SolverOptions& opts);

/// Builds a RootSet from explicit values (residual and separation
/// metadata recomputed against r.poly).
RootSet make_root_set(const gen::YvRecord& r, std::vector<Complex> roots, mpfr_prec_t precision_bits);

/// Count, residual, separation, omega- and conjugation-closure, root sum,
/// and the "no real root near a small rational" sanity check.
VerificationReport certify(const RootSet& rs, const gen::YvRecord& r, long tolerance_bits = 0);

/// Numeric sum of z^-m over nonzero roots against the exact Newton sums.
/// Passes when the relative deviation is below 10^-digits.
VerificationReport newton_crosscheck(const RootSet& rs, const gen::YvRecord& r,
                                     std::span<const int> powers, double digits);

/// Horner evaluation of an integer polynomial at a complex point.
Complex evaluate(std::span<const Real> coeffs, const Complex& z);
std::vector<Real> to_reals(std::span<const Integer> coeffs, mpfr_prec_t prec);

std::string to_csv(const RootSet& rs);
std::string to_svg(const RootSet& rs);

}  // namespace yv::roots
