#include "yv/errors.hpp"
#include "yv/exactpoly/quotient.hpp"

#include <doctest.h>

#include <random>

using namespace yv::exact;

namespace {

// Random polynomial with `len` coefficients in [-bound, bound] and a nonzero
// leading coefficient.
IntPoly random_poly(std::mt19937_64& rng, std::size_t len, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Integer> c(len);
  for (auto& x : c) x = d(rng);
  if (len > 0 && c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

// Coefficients scaled by 2^k so products exercise multi-limb values.
IntPoly widen(const IntPoly& p, unsigned k) {
  std::vector<Integer> c(p.coeffs());
  for (auto& x : c) x <<= k;
  return IntPoly(std::move(c));
}

}  // namespace

TEST_SUITE("exactpoly") {

TEST_CASE("construction normalizes trailing zeros") {
  IntPoly p{1, 2, 0, 0};
  CHECK(p.size() == 2);
  CHECK(*p.degree() == 1);
  CHECK(IntPoly{0, 0}.is_zero());
  CHECK_FALSE(IntPoly{}.degree().has_value());
  CHECK(p.coeff(7) == 0);
  CHECK(IntPoly::monomial(3, 4).to_string() == "3*z^4");
}

TEST_CASE("small arithmetic") {
  IntPoly a{1, 1};   // 1 + z
  IntPoly b{-1, 1};  // -1 + z
  CHECK(a * b == IntPoly{-1, 0, 1});
  CHECK(a + b == IntPoly{0, 2});
  CHECK(a - a == IntPoly{});
  CHECK(-a == IntPoly{-1, -1});
  CHECK(a * Integer(3) == IntPoly{3, 3});
  CHECK(a.shifted_up(2) == IntPoly{0, 0, 1, 1});
  CHECK(a.shifted_up(2).shifted_down(2) == a);
  CHECK(IntPoly{0, 0, 5}.low_order() == 2);
}

TEST_CASE("karatsuba agrees with schoolbook on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t la = 1 + rng() % 150, lb = 1 + rng() % 150;
    IntPoly a = widen(random_poly(rng, la, 1000), static_cast<unsigned>(rng() % 200));
    IntPoly b = widen(random_poly(rng, lb, 1000), static_cast<unsigned>(rng() % 200));
    auto school = mul_schoolbook(a.coeffs(), b.coeffs());
    CHECK(IntPoly(mul_karatsuba(a.coeffs(), b.coeffs(), 4)) == IntPoly(school));
    CHECK(a * b == IntPoly(school));
  }
}

TEST_CASE("stride-3 operands multiply correctly") {
  // both factors supported on exponents = 1 mod 3, as Q_n/z patterns are
  std::mt19937_64 rng(11);
  std::vector<Integer> a(200), b(190);
  for (std::size_t i = 1; i < a.size(); i += 3) a[i] = static_cast<long>(rng() % 2001) - 1000;
  for (std::size_t i = 1; i < b.size(); i += 3) b[i] = static_cast<long>(rng() % 2001) - 1000;
  a[199] = 1;
  b[187] = 1;
  IntPoly pa(a), pb(b);
  CHECK(pa * pb == IntPoly(mul_schoolbook(pa.coeffs(), pb.coeffs())));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntPoly a = random_poly(rng, rng() % 12, 50), b = random_poly(rng, rng() % 12, 50),
            c = random_poly(rng, rng() % 12, 50);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (b - a) == b);
  }
}

TEST_CASE("derivative obeys the product rule") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IntPoly a = random_poly(rng, rng() % 20, 100), b = random_poly(rng, rng() % 20, 100);
    CHECK(derivative(a * b) == derivative(a) * b + a * derivative(b));
  }
  CHECK(derivative(IntPoly{5}).is_zero());
  CHECK(derivative(IntPoly{1, 2, 3}) == IntPoly{2, 6});
}

TEST_CASE("exact division round trip") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    IntPoly q = random_poly(rng, 1 + rng() % 30, 10000);
    IntPoly d = random_poly(rng, 1 + rng() % 20, 10000);
    CHECK(exact_div(q * d, d) == q);
  }
  CHECK(exact_div(IntPoly{}, IntPoly{1, 1}).is_zero());
}

TEST_CASE("exact division failures") {
  // (z^2 + 1) / (z + 1) leaves remainder 2
  CHECK_THROWS_AS(exact_div(IntPoly{1, 0, 1}, IntPoly{1, 1}), yv::NonZeroRemainder);
  // z / 2z is 1/2
  CHECK_THROWS_AS(exact_div(IntPoly{0, 1}, IntPoly{0, 2}), yv::NonIntegerQuotient);
  CHECK_THROWS(exact_div(IntPoly{1}, IntPoly{}));
}

TEST_CASE("evaluation") {
  IntPoly p{4, 0, 0, 1};
  CHECK(evaluate_exact(p, Integer(-2)) == -4);
  CHECK(evaluate_exact(p, Rational(1, 2)) == Rational(33, 8));
}

TEST_CASE("power sums of known roots") {
  // (z-1)(z-2)(z-3)
  IntPoly p = IntPoly{-1, 1} * IntPoly{-2, 1} * IntPoly{-3, 1};
  auto s = newton_power_sums(p, 5);
  CHECK(s[0] == 3);
  for (int m = 1; m <= 5; ++m) CHECK(s[m] == 1 + (1L << m) + static_cast<long>(std::pow(3, m)));
  // non-monic: 2z^2 - 1 has roots +-1/sqrt2
  auto t = newton_power_sums(IntPoly{-1, 0, 2}, 4);
  CHECK(t[1] == 0);
  CHECK(t[2] == 1);
  CHECK(t[4] == Rational(1, 2));
  CHECK_THROWS(newton_power_sums(IntPoly{3}, 2));
}

TEST_CASE("reversal") {
  CHECK(reverse_nonzero(IntPoly{4, 0, 0, 1}) == IntPoly{1, 0, 0, 4});
  CHECK_THROWS(reverse_nonzero(IntPoly{0, 1}));
}

TEST_CASE("content and primitive part") {
  CHECK(content(IntPoly{6, -9, 12}) == 3);
  CHECK(primitive_part(IntPoly{-6, 9, -12}) == IntPoly{2, -3, 4});
}

TEST_CASE("gcd recovers planted common factors") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    IntPoly c = primitive_part(random_poly(rng, 2 + rng() % 6, 30));
    IntPoly a = random_poly(rng, 1 + rng() % 8, 30);
    IntPoly b = random_poly(rng, 1 + rng() % 8, 30);
    IntPoly g = gcd(a * c, b * c);
    // g is a multiple of c and divides both products
    CHECK_NOTHROW(exact_div(g, c));
    CHECK_NOTHROW(exact_div(a * c, g));
    CHECK_NOTHROW(exact_div(b * c, g));
  }
  CHECK(gcd(IntPoly{-1, 0, 1}, IntPoly{1, 1}) == IntPoly{1, 1});
  CHECK(gcd(IntPoly{4, 0, 0, 1}, IntPoly{-80, 0, 0, 20, 0, 0, 1}) == IntPoly{1});
  CHECK(gcd(IntPoly{}, IntPoly{}).is_zero());
  CHECK(gcd(IntPoly{}, IntPoly{-2, -4}) == IntPoly{1, 2});
}

TEST_CASE("rational division and extended gcd") {
  RatPoly a(IntPoly{-1, 0, 1});
  RatPoly b(IntPoly{1, 2});
  auto qr = divmod(a, b);
  CHECK(qr.quotient * b + qr.remainder == a);
  CHECK(*qr.quotient.degree() == 1);
  CHECK(qr.remainder == RatPoly::constant(Rational(-3, 4)));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    RatPoly x(random_poly(rng, 1 + rng() % 8, 20)), y(random_poly(rng, 1 + rng() % 8, 20));
    ExtGcd e = rat_gcd_ext(x, y);
    CHECK(e.s * x + e.t * y == e.g);
    CHECK(rem(x, e.g).is_zero());
    CHECK(rem(y, e.g).is_zero());
  }
  CHECK(to_primitive_int(RatPoly({Rational(1, 2), Rational(-1, 3)})) == IntPoly{-3, 2});
}

TEST_CASE("quotient ring arithmetic") {
  QuotientRing ring(IntPoly{4, 0, 0, 1});  // a^3 = -4
  auto a = ring.root();
  CHECK((a * a * a) == ring.constant(-4));
  CHECK(a.inverse() == ring.element(RatPoly({0, 0, Rational(-1, 4)})));
  CHECK(a * a.inverse() == ring.one());
  CHECK(ring.degree() == 3);
}

TEST_CASE("quotient ring inverse property") {
  std::mt19937_64 rng(19);
  QuotientRing ring(IntPoly{-80, 0, 0, 20, 0, 0, 1});  // Q_3, irreducible
  for (int trial = 0; trial < 20; ++trial) {
    auto e = ring.element(random_poly(rng, 1 + rng() % 6, 50));
    if (e.is_zero()) continue;
    CHECK(e * e.inverse() == ring.one());
    auto f = ring.element(random_poly(rng, 1 + rng() % 6, 50));
    CHECK(quotient_mul(e, f) == f * e);
  }
}

TEST_CASE("quotient ring rejects bad moduli and non-units") {
  CHECK_THROWS_AS(QuotientRing(IntPoly{3}), std::invalid_argument);
  CHECK_THROWS_AS(QuotientRing(IntPoly{1, 2, 1}), std::invalid_argument);  // (1+z)^2
  QuotientRing ring(IntPoly{-1, 0, 1});                                    // (z-1)(z+1)
  auto e = ring.element(IntPoly{-1, 1});
  try {
    (void)e.inverse();
    FAIL("expected NotInvertible");
  } catch (const NotInvertible& ex) {
    CHECK(ex.witness() == RatPoly(IntPoly{-1, 1}));
  }
  QuotientRing other(IntPoly{1, 0, 1});
  CHECK_THROWS(ring.one() + other.one());
}

}
