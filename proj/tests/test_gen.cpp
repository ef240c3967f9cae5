#include "oracle.hpp"
#include "yv/errors.hpp"
#include "yv/gen.hpp"

#include <doctest.h>

using namespace yv;
using namespace yv::gen;
using exact::Integer;
using exact::IntPoly;

namespace {

const std::vector<YvRecord>& family(long n_max = 14) {
  static const std::vector<YvRecord> recs = generate(20);
  REQUIRE(n_max <= 20);
  return recs;
}

IntPoly from_oracle(const oracle::Poly& p) {
  std::vector<Integer> c;
  for (const auto& x : p) {
    REQUIRE(x.get_den() == 1);
    c.push_back(x.get_num());
  }
  return IntPoly(std::move(c));
}

}  // namespace

TEST_SUITE("gen") {

TEST_CASE("first members and Table 1") {
  const auto& recs = family();
  CHECK(recs[0].poly == IntPoly{1});
  CHECK(recs[1].poly == IntPoly{0, 1});
  for (const auto& [n, terms] : oracle::table1()) {
    CAPTURE(n);
    std::vector<Integer> c(yv_degree(n) + 1);
    for (const auto& [k, v] : terms) c[k] = Integer(v);
    CHECK(recs[n].poly == IntPoly(c));
  }
}

TEST_CASE("recurrence agrees with the rational-arithmetic oracle") {
  auto ref = oracle::yv(12);
  auto recs = generate(12);
  for (long n = 0; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(recs[n].poly == from_oracle(ref[n]));
  }
}

TEST_CASE("streaming and batch generation agree") {
  auto batch = generate(9);
  std::vector<IntPoly> seen;
  generate_streaming(9, [&](const YvRecord& r) {
    CHECK(r.n == static_cast<long>(seen.size()));
    seen.push_back(r.poly);
  });
  REQUIRE(seen.size() == batch.size());
  for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == batch[i].poly);
  CHECK(generate(0).size() == 1);
  CHECK_THROWS(generate(-1));
}

TEST_CASE("degree, compression and residue class") {
  const auto& recs = family();
  for (long n = 0; n <= 20; ++n) {
    CAPTURE(n);
    const auto& r = recs[n];
    CHECK(*r.poly.degree() == yv_degree(n));
    CHECK(r.compressed.size() == compressed_top(n) + 1);
    CHECK(r.compressed.front() == 1);
    CHECK(r.x_n == r.compressed.back());
    CHECK(r.residue_class == n % 3);
    CHECK(cube_expand(r.compressed, n) == r.poly);
    CHECK(check_structure(r).passed());
  }
  CHECK(recs[4].compressed == std::vector<Integer>{1, 60, 0, 11200});
}

TEST_CASE("structure violations are rejected") {
  CHECK_THROWS_AS(cube_compress(IntPoly{4, 1, 0, 1}, 2), StructureViolation);  // stray z term
  CHECK_THROWS_AS(cube_compress(IntPoly{4, 0, 1}, 2), StructureViolation);     // wrong degree
  CHECK_THROWS_AS(make_record(2, IntPoly{4, 0, 0, 2}), StructureViolation);    // not monic
  CHECK_THROWS_AS(make_record(2, IntPoly{0, 0, 0, 1}), StructureViolation);    // x_n = 0
  std::vector<Integer> short_form{1};
  CHECK_THROWS_AS(cube_expand(short_form, 3), StructureViolation);
}

TEST_CASE("next_yv refuses a wrong predecessor") {
  // Q_3 from (Q_1, Q_2) is fine, from (Q_0 + 1, Q_2) is not divisible
  const auto& recs = family();
  CHECK(next_yv(recs[1].poly, recs[2].poly) == recs[3].poly);
  CHECK_THROWS_AS(next_yv(IntPoly{1, 0, 0, 3}, recs[2].poly), IntegrityError);
}

TEST_CASE("divisibility, valuations and mod 4") {
  const auto& recs = family();
  for (const auto& r : recs) {
    CAPTURE(r.n);
    CHECK(check_divisibility(r).passed());
    CHECK(mod4_reduction(r).passed());
    CHECK(verify_irrationality_premises(r).passed());
    CHECK(r.p_n == expected_valuation(r.n));
  }
  CHECK(recs[2].p_n == 2);
  CHECK(recs[5].p_n == 10);
  CHECK(valuation_checks(recs).passed());
}

TEST_CASE("divisibility catches a planted violation") {
  YvRecord r = family()[5];
  r.compressed[1] += 1;  // 140 -> 141 is not divisible by 4
  auto rep = check_divisibility(r);
  CHECK(rep.failed());
  CHECK(rep.witness.is_array());
}

TEST_CASE("Wronskian identity") {
  const auto& recs = family();
  for (long n = 1; n < 20; ++n) CHECK(wronskian_check(recs, n).passed());
  CHECK_THROWS_AS(wronskian_check(recs, 0), std::invalid_argument);
}

TEST_CASE("rational solutions") {
  const auto& recs = family();
  auto w1 = rational_solution(recs, 1);
  CHECK(w1.numerator == IntPoly{-1});
  CHECK(w1.denominator == IntPoly{0, 1});
  auto w2 = rational_solution(recs, 2);
  CHECK(w2.numerator == IntPoly{4, 0, 0, -2});
  CHECK(w2.denominator == IntPoly{0, 4, 0, 0, 1});
  auto w0 = rational_solution(recs, 0);
  CHECK(w0.numerator.is_zero());
  CHECK(w0.denominator == IntPoly{1});
  auto wm2 = rational_solution(recs, -2);
  CHECK(wm2.n == -2);
  CHECK(wm2.numerator == -w2.numerator);
  CHECK(negate(w2) == wm2);
}

TEST_CASE("make_rational canonicalizes") {
  // (2z + 2) / (-4z^2 - 4z) = -1 / (2z)
  auto w = make_rational(0, IntPoly{2, 2}, IntPoly{0, -4, -4});
  CHECK(w.numerator == IntPoly{-1});
  CHECK(w.denominator == IntPoly{0, 2});
  CHECK_THROWS_AS(make_rational(0, IntPoly{1}, IntPoly{}), DegenerateDenominator);
}

TEST_CASE("P_II residual") {
  const auto& recs = family();
  for (long n = -10; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(pII_residual(rational_solution(recs, n)).passed());
  }
  // w_2 is not a solution for alpha = 3
  CHECK(pII_residual(rational_solution(recs, 2), 3).failed());
}

TEST_CASE("Backlund chain") {
  const auto& recs = family();
  CHECK(backlund_check(std::span(recs).first(11), 10).passed());
  CHECK(backlund_next(rational_solution(recs, 3)) == rational_solution(recs, 4));
  CHECK(backlund_next(rational_solution(recs, -4)) == rational_solution(recs, -3));
}

TEST_CASE("JSON round trip uses decimal strings") {
  const auto& r = family()[8];
  auto j = to_json(r);
  CHECK(j.dump().find("\"-991048439693312000000\"") != std::string::npos);
  YvRecord back = record_from_json(j);
  CHECK(back.n == r.n);
  CHECK(back.poly == r.poly);
  CHECK(back.x_n == r.x_n);
  CHECK(back.p_n == r.p_n);
}

}
