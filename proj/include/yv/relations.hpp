#pragma once

#include "yv/exactpoly/quotient.hpp"
#include "yv/gen.hpp"
#include "yv/roots.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yv::relations {

using exact::IntPoly;
using exact::QuotientElement;
using exact::QuotientRing;
using exact::Rational;

enum class Mode { exact, numeric };
std::string to_string(Mode m);

// Sums are formed up to this power; the displayed relations use 1, 2, 3, 5
// and power 4 is reported without a reference value.
inline constexpr int kMaxPower = 5;

/// sum over roots z_k of target of (a - z_k)^-p, as an element of
/// Q[a]/(host(a)). Requires gcd(host, target) = 1; throws NotInvertible
/// otherwise.
QuotientElement cross_sum_residue(const QuotientRing& host_ring, const IntPoly& target, int p);
QuotientElement cross_sum_residue(const IntPoly& host, const IntPoly& target, int p);

/// sum over the other roots z_k != a of host of (a - z_k)^-p, uniformly in
/// the root a, as an element of Q[a]/(host(a)).
QuotientElement self_sum_residue(const QuotientRing& host_ring, const IntPoly& host, int p);
QuotientElement self_sum_residue(const IntPoly& host, int p);

/// All powers 1..max_power at once (index 0 unused). One inversion each.
std::vector<QuotientElement> cross_sums(const QuotientRing& ring, const IntPoly& target, int max_power);
std::vector<QuotientElement> self_sums(const QuotientRing& ring, const IntPoly& host, int max_power);

/// Which root set a sum is evaluated at / summed over, relative to n.
enum class Host { prev, curr };  // Q_{n-1}, Q_n

struct SumSpec {
  Host base = Host::prev;
  bool same = true;  // summing over base's own roots (k != j) or the other polynomial's
  int power = 1;
  bool exclude_self = true;
};

enum class Group { theorem, kudryashov, corollary };
std::string to_string(Group g);

/// One displayed relation: coeff_self * S_self + coeff_cross * S_cross
/// = root_coeff(n) * z_j + constant(n), at every root z_j of the base.
struct Family {
  std::string id;
  Group group;
  Host base;
  int power;
  int coeff_self;
  int coeff_cross;
  Rational (*root_coeff)(long n);
  Rational (*constant)(long n);
  bool asserted;
};

std::span<const Family> families();
std::vector<const Family*> families(Group g);

struct RelationReport {
  long n = 0;
  std::string family;
  Mode mode = Mode::exact;
  Status status = Status::pass;
  bool asserted = true;
  std::string worst_deviation;  // numeric mode
  std::string residue;          // exact mode: failing residue, or the computed value when unasserted
  std::string note;

  bool passed() const noexcept { return status != Status::fail; }
};

nlohmann::json to_json(const RelationReport& r);

/// Exact sums at the generic root of one host.
struct ExactHostSums {
  QuotientRing ring;
  std::vector<QuotientElement> self;
  std::vector<QuotientElement> cross;
};

/// Exact sums for both hosts of level n. A host without roots (Q_0) is
/// absent.
struct ExactLevel {
  long n = 0;
  std::optional<ExactHostSums> prev;
  std::optional<ExactHostSums> curr;
};

ExactLevel exact_level(std::span<const gen::YvRecord> records, long n);

/// Pairwise sums at every root of one host, with magnitudes for scaling.
struct NumericHostSums {
  std::vector<mp::Complex> points;
  std::vector<std::array<mp::Complex, kMaxPower + 1>> self, cross;
  std::vector<std::array<mp::Real, kMaxPower + 1>> self_mass, cross_mass;
};

struct NumericLevel {
  long n = 0;
  NumericHostSums prev;
  NumericHostSums curr;
};

NumericHostSums numeric_host_sums(const roots::RootSet& base, const roots::RootSet& other);
NumericLevel numeric_level(const roots::RootSet& prev, const roots::RootSet& curr);

std::vector<RelationReport> evaluate(const ExactLevel& level, Group g);
std::vector<RelationReport> evaluate(const NumericLevel& level, Group g, double tolerance_digits);

/// Every family (power 4 included) at every root: the exact left-hand side
/// evaluated at the numeric root against the numeric left-hand side.
VerificationReport mode_agreement(const ExactLevel& exact, const NumericLevel& numeric, double tolerance_digits);

/// Inputs for the per-group drivers. root_sets is indexed by n and needed
/// only for numeric mode.
struct Inputs {
  std::span<const gen::YvRecord> records;
  std::span<const roots::RootSet> root_sets;
  double tolerance_digits = 30;
};

std::vector<RelationReport> verify_theorem(const Inputs& in, long n, Mode mode);
std::vector<RelationReport> verify_kudryashov(const Inputs& in, long n, Mode mode);
std::vector<RelationReport> verify_corollary(const Inputs& in, long n, Mode mode);

/// Taylor coefficients a_0..a_M of u = w_n - 1/(z - w) at the j-th root w of
/// Q_{n-1}, from the pairwise root sums.
std::vector<mp::Complex> pole_series(const roots::RootSet& prev, const roots::RootSet& curr, std::size_t j,
                                     int M);

/// Checks a_0 = 0, a_1 = -w/6, a_2 = -(n+1)/4, a_4 = w((n+1)/24 - 1/36)
/// within 10^-tolerance_digits (absolute) at every root of Q_{n-1}; a_3 is
/// reported only.
VerificationReport pole_series_check(const roots::RootSet& prev, const roots::RootSet& curr, long n,
                                     double tolerance_digits);

/// Central finite difference of target'/target at one seeded-random host
/// root against -sum 1/(a - z_k)^2 over the target's roots.
VerificationReport derivative_identity_check(const roots::RootSet& host_roots, const gen::YvRecord& target,
                                             const roots::RootSet& target_roots, std::uint64_t seed);

}  // namespace yv::relations
