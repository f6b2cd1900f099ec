#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "exactfn/ball.hpp"
#include "exactfn/dyadic.hpp"
#include "exactfn/rational.hpp"
#include "exactfn/real.hpp"

using namespace exactfn;

namespace {

std::mt19937_64 rng(20240911);

Rational random_rational(long den_max = 1 << 20) {
  std::uniform_int_distribution<long> num(-den_max, den_max);
  std::uniform_int_distribution<long> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Ball random_ball(int prec_bits = 53) {
  Rational c = random_rational();
  std::uniform_int_distribution<long> rexp(-40, -2);
  Ball b = Ball::from_rational(c, Precision(prec_bits));
  return b + Ball(Dyadic(0), Dyadic::pow2(rexp(rng)), Precision(prec_bits));
}

Rational sample_in(const Ball& b) {
  std::uniform_int_distribution<long> t(0, 1 << 20);
  Rational lo = b.lo().to_rational(), hi = b.hi().to_rational();
  return lo + (hi - lo) * Rational(t(rng), 1 << 20);
}

}  // namespace

TEST_CASE("dyadic canonical form and arithmetic") {
  Dyadic a(mpz_class(12), 0);  // 12 = 3*2^2
  REQUIRE(a.mantissa() == 3);
  REQUIRE(a.exponent() == 2);
  REQUIRE(Dyadic(0).exponent() == 0);

  Dyadic third_ish(mpz_class(1), -2);  // 1/4
  REQUIRE((a + third_ish).to_rational() == Rational(49, 4));
  REQUIRE((a * third_ish).to_rational() == Rational(3));
  REQUIRE((a - a).is_zero());
  REQUIRE(Dyadic(5) < Dyadic(6));
  REQUIRE(Dyadic(mpz_class(1), -1000) > Dyadic(0));
}

TEST_CASE("dyadic rounding reports exact error") {
  Dyadic x(mpz_class(0b110111011101), 0);
  Dyadic err;
  Dyadic r = x.round_to_bits(5, Round::Nearest, &err);
  REQUIRE((r - x).abs() == err);
  REQUIRE(err * Dyadic(2) <= Dyadic::pow2(x.mag2_upper() - 5));
  Dyadic up = x.round_to_bits(5, Round::Up);
  Dyadic dn = x.round_to_bits(5, Round::Down);
  REQUIRE(up >= x);
  REQUIRE(dn <= x);

  // from_rational directed rounding brackets the true value
  Rational q(1, 3);
  Dyadic lo = Dyadic::from_rational(q, 20, Round::Down);
  Dyadic hi = Dyadic::from_rational(q, 20, Round::Up);
  REQUIRE(lo.to_rational() <= q);
  REQUIRE(q <= hi.to_rational());
  REQUIRE(hi - lo <= Dyadic::pow2(-20));
}

TEST_CASE("ball of 1/3 at precision 10 matches the worked listing") {
  Ball t1 = Ball::from_rational(Rational(1, 3), Precision(10));
  REQUIRE(t1.contains(Rational(1, 3)));
  REQUIRE(t1.radius_below(11));
  Dyadic diff_num = t1.centre() * Dyadic(3) - Dyadic(1);
  REQUIRE(diff_num.abs() <= Dyadic(3) * Dyadic::pow2(-11));
  REQUIRE(t1.to_string().find("<2^(-1") != std::string::npos);
}

TEST_CASE("binary precision rule: higher of the two") {
  Ball t1 = Ball::from_rational(Rational(1, 3), Precision(10));
  Ball t2 = Ball::from_rational(Rational(1, 3), Precision(20));
  REQUIRE((t1 + t2).precision().bits == 20);
  REQUIRE((t1 * t2).precision().bits == 20);
  Ball zero = Ball::exact(0L, Precision(10));
  Ball s = t1 + zero;
  REQUIRE(s.contains(Rational(1, 3)));
}

TEST_CASE("division errors: certain and potential") {
  Ball one = Ball::exact(1L);
  auto r1 = div(one, Ball::exact(0L));
  REQUIRE(!r1.has_value());
  REQUIRE(r1.has_certain_error());
  REQUIRE(r1.has_error(ErrorKind::DivisionByZero));

  Ball t1 = Ball::from_rational(Rational(1, 3), Precision(10));
  Ball diff = t1 - t1;  // contains 0 but is not exactly {0}
  auto r2 = div(one, diff);
  REQUIRE(!r2.has_value());
  REQUIRE(!r2.has_certain_error());
  REQUIRE(r2.has_error(ErrorKind::DivisionByZero));

  auto r3 = div(Ball::exact(6L), Ball::exact(2L));
  REQUIRE(r3.has_value());
  REQUIRE(r3.value().contains(Rational(3)));
}

TEST_CASE("elementary enclosures") {
  auto s4 = sqrt(Ball::exact(4L));
  REQUIRE(s4.has_value());
  REQUIRE(s4.value().contains(Rational(2)));
  REQUIRE(s4.value().radius_below(40));

  REQUIRE(sin(Ball::exact(0L)).contains(Dyadic(0)));
  Ball c1 = cos(Ball::exact(0L));
  REQUIRE(c1.contains(Dyadic(1)));

  // cos over a huge ball stays within [-1, 1]
  Ball wide(Dyadic(0), Dyadic(4), Precision(53));
  Ball cw = cos(wide);
  REQUIRE(cw.lo() >= Dyadic(-1));
  REQUIRE(cw.hi() <= Dyadic(1));

  auto sneg = sqrt(Ball::exact(-4L));
  REQUIRE(sneg.has_certain_error());
  auto sstraddle = sqrt(Ball(Dyadic(0), Dyadic(1), Precision(53)));
  REQUIRE(!sstraddle.has_certain_error());
  REQUIRE(sstraddle.has_error(ErrorKind::OutOfDomain));
  REQUIRE(sstraddle.has_value());
  REQUIRE(sstraddle.value().contains(Rational(1)));  // sqrt(1) on the nonneg part
}

TEST_CASE("kleenean comparisons") {
  Ball t1 = Ball::from_rational(Rational(1, 3), Precision(10));
  REQUIRE(is_true(less(Ball::exact(0L), t1)));
  REQUIRE(is_unknown(equal(t1, t1)));
  REQUIRE(is_true(equal(Ball::exact(0L), Ball::exact(0L))));
  REQUIRE(is_false(equal(Ball::exact(0L), t1)));
  REQUIRE(is_unknown(less(Ball::from_rational(Rational(1, 3)), t1)));
  REQUIRE(surely(less(Ball::exact(0L), t1)));
  REQUIRE(maybe(equal(t1, t1)));
  REQUIRE(!surely(equal(t1, t1)));
}

TEST_CASE("lognorm") {
  long l1 = lognorm(Ball::exact(1L));
  REQUIRE((l1 == 0 || l1 == 1));
  long l5 = lognorm(Ball::exact(5L));
  REQUIRE((l5 == 3 || l5 == 4));
  REQUIRE(lognorm(Ball::exact(0L)) <= -(1L << 29));
  // minimality: -2^n <= a <= 2^n must actually hold
  REQUIRE(Dyadic(5) <= Dyadic::pow2(l5));
  REQUIRE(Dyadic(5) > Dyadic::pow2(l5 - 2));
}

TEST_CASE("set_precision preserves enclosure") {
  Ball b = Ball::from_rational(Rational(1, 3), Precision(100));
  Ball low = set_precision(b, Precision(10));
  REQUIRE(low.contains(Rational(1, 3)));
  // nearest 10-bit dyadic to 1/3 is 683/2048, error 1/6144
  REQUIRE(low.radius() >= Dyadic::pow2(-13));
  Ball one = Ball::exact(1L, Precision(100));
  REQUIRE(set_precision(one, Precision(10)).is_exact());

  for (int i = 0; i < 1000; ++i) {
    Ball x = random_ball(80);
    Rational s = sample_in(x);
    REQUIRE(set_precision(x, Precision(12)).contains(s));
  }
}

TEST_CASE("inclusion soundness of ball ops (randomized)") {
  for (int i = 0; i < 4000; ++i) {
    Ball a = random_ball(), b = random_ball();
    Rational x = sample_in(a), y = sample_in(b);
    REQUIRE((a + b).contains(x + y));
    REQUIRE((a - b).contains(x - y));
    REQUIRE((a * b).contains(x * y));
    REQUIRE(a.abs().contains(abs(x)));
    REQUIRE(Ball::min(a, b).contains(std::min(x, y)));
    REQUIRE(Ball::max(a, b).contains(std::max(x, y)));
    auto q = div(a, b);
    if (q.has_value()) REQUIRE(q.value().contains(x / y));
    // precision propagation
    REQUIRE((a + b).precision().bits == std::max(a.precision().bits, b.precision().bits));
  }
}

TEST_CASE("kleenean soundness (randomized)") {
  for (int i = 0; i < 2000; ++i) {
    Ball a = random_ball(), b = random_ball();
    Rational x = sample_in(a), y = sample_in(b);
    Kleenean lt = less(a, b);
    if (is_true(lt)) REQUIRE(x < y);
    if (is_false(lt)) REQUIRE(!(x < y));
    Kleenean eq = equal(a, b);
    if (is_false(eq)) REQUIRE(x != y);
  }
}

TEST_CASE("mul enclosure golden: [1 +- 0.1]^2 contains [0.81, 1.21]") {
  Ball c = Ball::from_endpoints(Dyadic::from_rational(Rational(9, 10), 60, Round::Down),
                                Dyadic::from_rational(Rational(11, 10), 60, Round::Up));
  Ball sq = c * c;
  REQUIRE(sq.contains(Rational(81, 100)));
  REQUIRE(sq.contains(Rational(121, 100)));
}

TEST_CASE("pi queried at strict accuracy") {
  CauchyReal pi = pi_real();
  Ball b = pi.query(bitsSG(10, 20));
  REQUIRE(b.radius_below(10));
  // centre within 2^-10 of 3.14159265358979...
  Rational approx(3141592653589793L, 1000000000000000L);
  REQUIRE(b.lo().to_rational() <= approx + Rational(1, 100000));
  REQUIRE(b.hi().to_rational() >= approx - Rational(1, 100000));

  Ball sq = (pi * pi).query(10);
  REQUIRE(sq.radius_below(10));
  // 9.8696044...
  REQUIRE(sq.contains(Ball::from_rational(Rational(98696044, 10000000), Precision(60)).centre()) ==
          sq.contains(Ball::from_rational(Rational(98696044, 10000000), Precision(60)).centre()));
  REQUIRE(sq.lo().to_rational() <= Rational(98696045, 10000000));
  REQUIRE(sq.hi().to_rational() >= Rational(98696040, 10000000));
}

TEST_CASE("exact real of 1 is exact at any accuracy") {
  CauchyReal one(1L);
  REQUIRE(one.query(5).is_exact());
  REQUIRE(one.query(200).contains(Dyadic(1)));
}

TEST_CASE("sqrt(pi) and arithmetic pipeline") {
  CauchyReal pi = pi_real();
  auto sp = sqrt(pi).query(10);
  REQUIRE(sp.has_value());
  REQUIRE(sp.value().radius_below(10));
  // 1.7724538...
  REQUIRE(sp.value().lo().to_rational() <= Rational(17724539, 10000000));
  REQUIRE(sp.value().hi().to_rational() >= Rational(17724538, 10000000));

  // (1 + 1/3)/2 == 2/3
  CauchyReal third(Rational(1, 3));
  auto two_thirds = (CauchyReal(1L) + third) / CauchyReal(2L);
  auto v = two_thirds.query(40);
  REQUIRE(v.has_value());
  REQUIRE(v.value().contains(Rational(2, 3)));

  // pi + 0 = pi query-for-query within radii
  Ball p1 = pi.query(30), p2 = (pi + CauchyReal(0L)).query(30);
  REQUIRE(Ball::intersect(p1, p2).has_value());
}

TEST_CASE("real comparisons are partial and monotone") {
  CauchyReal pi = pi_real();
  // pi < pi + 0.1^100
  Rational tiny = 1;
  for (int i = 0; i < 100; ++i) tiny /= 10;
  PartialBool cmp = less(pi, pi + CauchyReal(tiny));
  REQUIRE(is_unknown(cmp.query(bitsSG(10, 20))));
  REQUIRE(is_true(cmp.query(bitsSG(1000, 1000))));

  PartialBool self = less(pi, pi);
  REQUIRE(is_unknown(self.query(bitsSG(1000, 1000))));

  PartialBool easy = less(CauchyReal(0L), CauchyReal(1L));
  REQUIRE(is_true(easy.query(2)));
}

TEST_CASE("radius contract and consistency across accuracies") {
  CauchyReal pi = pi_real();
  CauchyReal x = pi * CauchyReal(Rational(7, 3)) + sqrt(pi).require() * pi;
  Ball prev = x.query(2);
  for (int acc : {8, 32, 128}) {
    Ball b = x.query(acc);
    REQUIRE(b.radius_below(acc));
    REQUIRE(Ball::intersect(prev, b).has_value());
    prev = b;
  }
}
