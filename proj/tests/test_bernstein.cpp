#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "exactfn/bernstein.hpp"
#include "exactfn/monomial.hpp"

using namespace exactfn;

namespace {

std::mt19937_64 rng(777);

MonomialPoly from_longs(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return MonomialPoly(std::move(v));
}

/// Polynomial with planted rational roots (times an optional rootless factor).
struct Planted {
  MonomialPoly p;
  std::vector<Rational> roots;  // with multiplicity
};

Planted random_planted(int max_deg = 10) {
  std::uniform_int_distribution<int> deg(1, max_deg);
  std::uniform_int_distribution<long> rnum(-8, 8);
  std::uniform_int_distribution<long> rden(1, 4);
  std::uniform_int_distribution<int> kind(0, 3);
  int d = deg(rng);
  MonomialPoly p = MonomialPoly::constant(Rational(1));
  Planted out;
  int used = 0;
  while (used < d) {
    if (kind(rng) == 0 && used + 2 <= d) {
      // irreducible quadratic x^2 + bx + c with b^2 < 4c
      long b = rnum(rng);
      Rational c = Rational(b * b, 4) + Rational(1 + (rnum(rng) & 3));
      c.canonicalize();
      p = p * MonomialPoly({c, Rational(b), Rational(1)});
      used += 2;
    } else {
      Rational r(rnum(rng), rden(rng));
      r.canonicalize();
      p = p * MonomialPoly({-r, Rational(1)});
      out.roots.push_back(r);
      used += 1;
    }
  }
  out.p = p;
  return out;
}

long roots_in_open(const std::vector<Rational>& roots, const Rational& a, const Rational& b) {
  long n = 0;
  for (const auto& r : roots)
    if (a < r && r < b) ++n;
  return n;
}

}  // namespace

TEST_CASE("basic transformations") {
  // T_1(x^2) = (x-1)^2 = x^2 - 2x + 1
  MonomialPoly x2 = from_longs({0, 0, 1});
  MonomialPoly t = transform_tc(x2, Rational(1));
  REQUIRE(t.coeff(0) == 1);
  REQUIRE(t.coeff(1) == -2);
  REQUIRE(t.coeff(2) == 1);

  // Co_2(x^2 + x) = 4x^2 + 2x
  MonomialPoly q = transform_co(from_longs({0, 1, 1}), Rational(2));
  REQUIRE(q.coeff(1) == 2);
  REQUIRE(q.coeff(2) == 4);

  // Rec_2(x^2 - 3x + 1): coefficients reversed
  MonomialPoly r = transform_rec(from_longs({1, -3, 1}), 2);
  REQUIRE(r.coeff(0) == 1);
  REQUIRE(r.coeff(1) == -3);
  REQUIRE(r.coeff(2) == 1);

  // Rec with padding: x^2*P(1/x) for P = x: degree-2 pad
  MonomialPoly pad = transform_rec(from_longs({0, 1}), 2);
  REQUIRE(pad.coeff(1) == 1);
  REQUIRE(pad.degree() == 1);
}

TEST_CASE("to_bernstein golden values") {
  // x^2 - 2 on [0,2] -> (-2, -2, 2)
  BernsteinCoeffs b = to_bernstein(from_longs({-2, 0, 1}), Rational(0), Rational(2));
  REQUIRE(b.coeffs.size() == 3);
  REQUIRE(b.coeffs[0] == -2);
  REQUIRE(b.coeffs[1] == -2);
  REQUIRE(b.coeffs[2] == 2);

  // constant: partition of unity
  BernsteinCoeffs c = to_bernstein(from_longs({7}), Rational(-1), Rational(3));
  for (const auto& v : c.coeffs) REQUIRE(v == 7);

  // x on [0,1] -> (0, 1)
  BernsteinCoeffs l = to_bernstein(from_longs({0, 1}), Rational(0), Rational(1));
  REQUIRE(l.coeffs == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("bernstein evaluation agrees with the polynomial") {
  for (int i = 0; i < 50; ++i) {
    Planted pl = random_planted(6);
    BernsteinCoeffs b = to_bernstein(pl.p, Rational(-2), Rational(3));
    for (int j = 0; j < 5; ++j) {
      Rational x(j - 2, 2);
      x.canonicalize();
      REQUIRE(b.eval(x) == pl.p.eval(x));
    }
  }
}

TEST_CASE("split equals direct conversion") {
  MonomialPoly p = from_longs({-2, 0, 1});
  BernsteinCoeffs b = to_bernstein(p, Rational(0), Rational(2));
  auto [left, right] = split_bernstein(b, Rational(1));
  BernsteinCoeffs dl = to_bernstein(p, Rational(0), Rational(1));
  BernsteinCoeffs dr = to_bernstein(p, Rational(1), Rational(2));
  REQUIRE(left.coeffs == dl.coeffs);
  REQUIRE(right.coeffs == dr.coeffs);

  // constants split to constants
  BernsteinCoeffs cb = to_bernstein(from_longs({5}), Rational(0), Rational(1));
  auto [cl, cr] = split_bernstein(cb, Rational(1, 3));
  for (const auto& v : cl.coeffs) REQUIRE(v == 5);
  for (const auto& v : cr.coeffs) REQUIRE(v == 5);

  for (int i = 0; i < 60; ++i) {
    Planted pl = random_planted(8);
    Rational a(-2), bb(2);
    BernsteinCoeffs whole = to_bernstein(pl.p, a, bb);
    std::uniform_int_distribution<long> mnum(-15, 15);
    Rational m(mnum(rng), 8);
    m.canonicalize();
    if (m <= a || m >= bb) m = Rational(1, 3);
    auto [sl, sr] = split_bernstein(whole, m);
    REQUIRE(sl.coeffs == to_bernstein(pl.p, a, m).coeffs);
    REQUIRE(sr.coeffs == to_bernstein(pl.p, m, bb).coeffs);
    // evaluation agreement at random rational points after split
    for (int j = 0; j < 20; ++j) {
      Rational frac(std::uniform_int_distribution<long>(0, 64)(rng), 64);
      frac.canonicalize();
      Rational x = a + (bb - a) * frac;
      const BernsteinCoeffs& side = x <= m ? sl : sr;
      REQUIRE(side.eval(x) == pl.p.eval(x));
    }
  }
}

TEST_CASE("bitsize growth after split stays within the lemma bound") {
  for (int i = 0; i < 30; ++i) {
    Planted pl = random_planted(8);
    // integer polynomial: clear denominators
    mpz_class alpha = pl.p.denominator_lcm();
    MonomialPoly ip = pl.p.scaled(Rational(alpha));
    Rational a(-2), b(2);
    BernsteinCoeffs whole = to_bernstein(ip, a, b);
    auto bitsize = [](const Rational& q) {
      return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
             mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
    };
    size_t beta = 1;
    for (const auto& c : whole.coeffs) beta = std::max(beta, bitsize(c));
    auto [l, r] = split_bernstein(whole, Rational(1, 2));
    size_t beta_prime = 4;  // endpoints -2, 2, midpoint 1/2 are tiny
    size_t bound = (static_cast<size_t>(ip.degree()) + 1) * (beta_prime + 2) + beta;
    for (const auto& c : l.coeffs) REQUIRE(bitsize(c) <= bound);
    for (const auto& c : r.coeffs) REQUIRE(bitsize(c) <= bound);
  }
}

TEST_CASE("sign variations") {
  REQUIRE(sign_variations({Rational(1), Rational(-1), Rational(1)}) == 2);
  REQUIRE(sign_variations({Rational(2), Rational(-3), Rational(1)}) == 2);
  REQUIRE(sign_variations({Rational(0), Rational(0), Rational(5)}) == 0);
  REQUIRE(sign_variations(std::vector<Rational>{}) == 0);
  REQUIRE(sign_variations({Rational(1), Rational(0), Rational(-2)}) == 1);
}

TEST_CASE("descartes verdicts against planted roots") {
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    Planted pl = random_planted(10);
    std::uniform_int_distribution<long> pick(-10, 10);
    Rational a(pick(rng), 3);
    a.canonicalize();
    Rational step(1 + (pick(rng) & 7), 2);
    step.canonicalize();
    Rational b = a + step;
    // avoid roots exactly at the endpoints; the lemma speaks about (a,b)
    bool endpoint_root = false;
    for (const auto& r : pl.roots)
      if (r == a || r == b) endpoint_root = true;
    if (endpoint_root) continue;
    long var = sign_variations(to_bernstein(pl.p, a, b));
    long nroots = roots_in_open(pl.roots, a, b);  // multiplicity-aware by construction
    ++checked;
    REQUIRE(var >= nroots);
    REQUIRE((var - nroots) % 2 == 0);
    if (var == 0) REQUIRE(nroots == 0);
    if (var == 1) REQUIRE(nroots == 1);
  }
  REQUIRE(checked > 300);
}

namespace {

/// Exact rational interval evaluation payload for root finding.
RatInterval ival_eval(const MonomialPoly& p, const RatInterval& iv) {
  return p.eval_interval(iv);
}

}  // namespace

TEST_CASE("root finding with evaluation: sqrt(2) region") {
  MonomialPoly p = from_longs({-2, 0, 1});
  auto e = std::function<RatInterval(const RatInterval&)>(
      [&](const RatInterval& iv) { return ival_eval(p, iv); });
  auto ok = std::function<bool(const RatInterval&)>(
      [](const RatInterval& v) { return v.width() < Rational(1, 128); });
  auto res = find_roots_with_evaluation<RatInterval>(p, RatInterval(Rational(0), Rational(2)), e,
                                                     ok);
  REQUIRE(res.has_value());
  // sqrt(2) must be covered; regions passed the ok predicate
  Rational lo(141421, 100000), hi(141422, 100000);
  bool covered = false;
  for (const auto& reg : res.value()) {
    REQUIRE(reg.value.width() < Rational(1, 128));
    if (reg.interval.lo <= hi && lo <= reg.interval.hi) covered = true;
  }
  REQUIRE(covered);
}

TEST_CASE("root finding: no roots yields empty list") {
  MonomialPoly one = from_longs({1});
  auto e = std::function<RatInterval(const RatInterval&)>(
      [&](const RatInterval& iv) { return ival_eval(one, iv); });
  auto ok = std::function<bool(const RatInterval&)>([](const RatInterval&) { return true; });
  auto res =
      find_roots_with_evaluation<RatInterval>(one, RatInterval(Rational(-1), Rational(1)), e, ok);
  REQUIRE(res.has_value());
  REQUIRE(res.value().empty());
}

TEST_CASE("root finding covers multiple roots including even multiplicity") {
  // x^2 (x - 1) on [-1, 2]: roots {0 (double), 1}
  MonomialPoly p = from_longs({0, 0, -1, 1});
  p = -p;  // x^2(x-1) = x^3 - x^2
  MonomialPoly q = from_longs({0, 0, -1, 1});
  auto e = std::function<RatInterval(const RatInterval&)>(
      [&](const RatInterval& iv) { return ival_eval(q, iv); });
  auto ok = std::function<bool(const RatInterval&)>(
      [](const RatInterval& v) { return v.width() < Rational(1, 64); });
  auto res =
      find_roots_with_evaluation<RatInterval>(q, RatInterval(Rational(-1), Rational(2)), e, ok);
  REQUIRE(res.has_value());
  auto covered = [&](const Rational& r) {
    for (const auto& reg : res.value())
      if (reg.interval.lo <= r && r <= reg.interval.hi) return true;
    return false;
  };
  REQUIRE(covered(Rational(0)));
  REQUIRE(covered(Rational(1)));
}

TEST_CASE("root finding coverage on random planted polynomials") {
  for (int i = 0; i < 40; ++i) {
    Planted pl = random_planted(8);
    RatInterval dom(Rational(-3), Rational(3));
    auto e = std::function<RatInterval(const RatInterval&)>(
        [&](const RatInterval& iv) { return pl.p.eval_interval(iv); });
    auto ok = std::function<bool(const RatInterval&)>(
        [](const RatInterval& v) { return v.width() < Rational(1, 32); });
    auto res = find_roots_with_evaluation<RatInterval>(pl.p, dom, e, ok);
    REQUIRE(res.has_value());
    for (const auto& r : pl.roots) {
      if (r <= dom.lo || r >= dom.hi) continue;
      bool covered = false;
      for (const auto& reg : res.value())
        if (reg.interval.lo <= r && r <= reg.interval.hi) covered = true;
      REQUIRE(covered);
    }
  }
}
