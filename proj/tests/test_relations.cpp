#include "oracle.hpp"
#include "yv/relations.hpp"

#include <doctest.h>

using namespace yv;
using namespace yv::relations;

namespace {

const std::vector<gen::YvRecord>& family() {
  static const std::vector<gen::YvRecord> recs = gen::generate(10);
  return recs;
}

const std::vector<roots::RootSet>& root_sets() {
  static const std::vector<roots::RootSet> rs = [] {
    std::vector<roots::RootSet> out;
    for (const auto& r : family()) out.push_back(roots::compute_roots(r, roots::SolverOptions{}));
    return out;
  }();
  return rs;
}

Rational at(const QuotientElement& e, long x) { return exact::evaluate_exact(e.residue(), Rational(x)); }

Rational brute_sum(long a, const std::vector<long>& others, int p) {
  Rational s = 0;
  for (long b : others) {
    if (b == a) continue;
    Rational d(1);
    for (int i = 0; i < p; ++i) d *= Rational(a - b);
    s += 1 / d;
  }
  return s;
}

}  // namespace

TEST_SUITE("relations") {

TEST_CASE("hand-checked self sums") {
  // roots of z^3 + 4 are a, a w, a w^2; sum 1/(a - a w^k) = 1/a = -a^2/4
  auto s = self_sum_residue(IntPoly{4, 0, 0, 1}, 1);
  CHECK(s.residue() == exact::RatPoly({0, 0, Rational(-1, 4)}));
  // roots +-sqrt 2: 1/(2a) = a/4
  auto t = self_sum_residue(IntPoly{-2, 0, 1}, 1);
  CHECK(t.residue() == exact::RatPoly({0, Rational(1, 4)}));
}

TEST_CASE("residues match brute force on hosts with rational roots") {
  const std::vector<long> host_roots{1, 2, -3};
  const std::vector<long> target_roots{5, -7, 4};
  IntPoly host{1}, target{1};
  for (long r : host_roots) host = host * IntPoly{-r, 1};
  for (long r : target_roots) target = target * IntPoly{-r, 1};
  QuotientRing ring(host);
  auto cross = cross_sums(ring, target, kMaxPower);
  auto self = self_sums(ring, host, kMaxPower);
  for (int p = 1; p <= kMaxPower; ++p) {
    for (long a : host_roots) {
      CAPTURE(p);
      CAPTURE(a);
      CHECK(at(cross[p], a) == brute_sum(a, target_roots, p));
      CHECK(at(self[p], a) == brute_sum(a, host_roots, p));
    }
    CHECK(cross_sum_residue(host, target, p) == cross[p]);
    CHECK(self_sum_residue(host, p) == self[p]);
  }
}

TEST_CASE("shared roots are reported") {
  QuotientRing ring(IntPoly{-1, 0, 1});
  CHECK_THROWS_AS(cross_sums(ring, IntPoly{-1, 1}, 2), exact::NotInvertible);
  CHECK_THROWS(self_sums(ring, IntPoly{-2, 0, 1}, 2));  // modulus does not divide the host
  CHECK_THROWS(cross_sum_residue(ring, IntPoly{3, 1}, 0));
}

TEST_CASE("family table") {
  CHECK(families().size() == 19);
  CHECK(families(Group::theorem).size() == 10);
  CHECK(families(Group::kudryashov).size() == 3);
  CHECK(families(Group::corollary).size() == 6);
  std::size_t unasserted = 0;
  for (const auto& f : families()) unasserted += f.asserted ? 0 : 1;
  CHECK(unasserted == 2);
}

TEST_CASE("exact relations for n <= 8") {
  const auto& recs = family();
  for (long n = 1; n <= 8; ++n) {
    auto level = exact_level(recs, n);
    CHECK(level.prev.has_value() == (n >= 2));
    CHECK(level.curr.has_value());
    for (Group g : {Group::theorem, Group::kudryashov, Group::corollary}) {
      for (const auto& r : evaluate(level, g)) {
        CAPTURE(n);
        CAPTURE(r.family);
        CHECK(r.passed());
        CHECK(r.mode == Mode::exact);
        if (!r.asserted) CHECK(r.status == Status::skipped);
      }
    }
  }
  CHECK_THROWS(exact_level(recs, 0));
}

TEST_CASE("a wrong right-hand side would be caught") {
  // Kudryashov p = 2 at n = 3 is -a/12; -a/6 must leave a nonzero residue
  auto level = exact_level(family(), 3);
  auto wrong = level.curr->self[2] - level.curr->ring.root() * Rational(-1, 6);
  CHECK_FALSE(wrong.is_zero());
}

TEST_CASE("numeric relations and agreement with the exact route") {
  const auto& rs = root_sets();
  const auto& recs = family();
  for (long n = 1; n <= 8; ++n) {
    CAPTURE(n);
    auto nl = numeric_level(rs[n - 1], rs[n]);
    for (Group g : {Group::theorem, Group::kudryashov, Group::corollary}) {
      for (const auto& r : evaluate(nl, g, 30)) {
        CAPTURE(r.family);
        CHECK(r.passed());
      }
    }
    CHECK(mode_agreement(exact_level(recs, n), nl, 30).passed());
  }
}

TEST_CASE("drivers") {
  Inputs in{family(), root_sets(), 30};
  for (long n = 1; n <= 4; ++n) {
    for (auto mode : {Mode::exact, Mode::numeric}) {
      for (const auto& r : verify_theorem(in, n, mode)) CHECK(r.passed());
      for (const auto& r : verify_corollary(in, n, mode)) CHECK(r.passed());
      for (const auto& r : verify_kudryashov(in, n, mode)) CHECK(r.passed());
    }
  }
  CHECK_THROWS(verify_theorem(in, 0, Mode::exact));
  auto j = to_json(verify_theorem(in, 2, Mode::numeric).front());
  CHECK(j["mode"] == "numeric");
  CHECK(j.contains("worst_deviation"));
}

TEST_CASE("pole series at the root of Q_1") {
  // n = 2: the only root of Q_1 is 0, so a_1 = a_4 = 0 and a_2 = -3/4
  const auto& rs = root_sets();
  auto a = pole_series(rs[1], rs[2], 0, 4);
  REQUIRE(a.size() == 5);
  CHECK(a[0].abs() < mp::pow2(-200, 256));
  CHECK(a[1].abs() < mp::pow2(-200, 256));
  CHECK(a[2].re().to_double() == doctest::Approx(-0.75));
  CHECK(a[4].abs() < mp::pow2(-200, 256));
}

TEST_CASE("pole series and derivative identity checks") {
  const auto& rs = root_sets();
  const auto& recs = family();
  CHECK(pole_series_check(rs[0], rs[1], 1, 20).passed());
  for (long n = 2; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(pole_series_check(rs[n - 1], rs[n], n, 20).passed());
    CHECK(derivative_identity_check(rs[n - 1], recs[n], rs[n], 5).passed());
  }
  // checking against the wrong n must fail
  CHECK(pole_series_check(rs[4], rs[5], 6, 20).failed());
}

}
