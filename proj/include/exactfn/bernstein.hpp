#pragma once

#include <cstdlib>
#include <functional>
#include <list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exactfn/errors.hpp"
#include "exactfn/monomial.hpp"
#include "exactfn/rational.hpp"

namespace exactfn {

// ---------------------------------------------------------------------------
// Basis transformations (all exact rational arithmetic).
// ---------------------------------------------------------------------------

/// T_c: P(x) -> P(x - c), computed as a Taylor shift by -c.
inline MonomialPoly transform_tc(const MonomialPoly& p, const Rational& c) {
  std::vector<Rational> a(p.coeffs());
  if (a.size() <= 1) return MonomialPoly(std::move(a));
  Rational t = -c;  // P(x - c) = shift of the argument by -c
  size_t d = a.size() - 1;
  for (size_t k = 0; k < d; ++k)
    for (size_t j = d - 1; j + 1 > k; --j) a[j] += t * a[j + 1];
  return MonomialPoly(std::move(a));
}

/// Co_l: P(x) -> P(l*x). Requires l != 0.
inline MonomialPoly transform_co(const MonomialPoly& p, const Rational& l) {
  if (sign(l) == 0) throw std::invalid_argument("transform_co: lambda must be nonzero");
  std::vector<Rational> a(p.coeffs());
  Rational pw(1);
  for (size_t k = 1; k < a.size(); ++k) {
    pw *= l;
    a[k] *= pw;
  }
  return MonomialPoly(std::move(a));
}

/// Rec_d: P(x) -> x^d * P(1/x), coefficient reversal padded to degree d.
inline MonomialPoly transform_rec(const MonomialPoly& p, long d) {
  if (d < p.degree()) throw std::invalid_argument("transform_rec: d < deg P");
  std::vector<Rational> a(static_cast<size_t>(d) + 1, Rational(0));
  for (size_t k = 0; k < p.coeffs().size(); ++k) a[static_cast<size_t>(d) - k] = p.coeffs()[k];
  return MonomialPoly(std::move(a));
}

// ---------------------------------------------------------------------------
// Bernstein coefficients.
// ---------------------------------------------------------------------------

/**
 * @brief b(P, a, b): coefficients of P in the Bernstein basis of degree
 * max(deg P, 1) for [a, b]; exact rationals. b_0 = P(a) and b_d = P(b).
 */
struct BernsteinCoeffs {
  Rational a;
  Rational b;
  std::vector<Rational> coeffs;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  RatInterval interval() const { return RatInterval(a, b); }

  /// Exact evaluation of the represented polynomial at x.
  Rational eval(const Rational& x) const {
    // de Casteljau with t = (x - a)/(b - a)
    Rational t = (x - a) / (b - a);
    Rational s = Rational(1) - t;
    std::vector<Rational> v = coeffs;
    for (size_t lvl = v.size(); lvl-- > 1;)
      for (size_t i = 0; i < lvl; ++i) v[i] = s * v[i] + t * v[i + 1];
    return v[0];
  }
};

inline BernsteinCoeffs to_bernstein(const MonomialPoly& p, const Rational& a, const Rational& b) {
  if (a >= b) throw std::invalid_argument("to_bernstein: requires a < b");
  long d = std::max<long>(p.degree(), 1);
  // P[a,b] = T_{-1} o Rec_d o Co_{b-a} o T_{-a} (P); its coefficient of x^(d-i),
  // divided by binomial(d, i), is the i-th Bernstein coefficient.
  MonomialPoly q = transform_tc(p, Rational(-a));
  q = transform_co(q, b - a);
  q = transform_rec(q, d);
  q = transform_tc(q, Rational(-1));
  std::vector<Rational> out(static_cast<size_t>(d) + 1);
  mpz_class binom(1);
  for (long i = 0; i <= d; ++i) {
    if (i > 0) {
      binom *= (d - i + 1);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(i));
    }
    out[static_cast<size_t>(i)] = q.coeff(static_cast<size_t>(d - i)) / Rational(binom);
  }
  return BernsteinCoeffs{a, b, std::move(out)};
}

/**
 * de Casteljau subdivision at m: from b(P,a,b) computes b(P,a,m) and b(P,m,b).
 * Exact; m need not lie inside [a,b].
 */
inline std::pair<BernsteinCoeffs, BernsteinCoeffs> split_bernstein(const BernsteinCoeffs& B,
                                                                   const Rational& m) {
  const size_t n = B.coeffs.size();
  Rational t = (m - B.a) / (B.b - B.a);
  Rational s = Rational(1) - t;
  std::vector<Rational> v = B.coeffs;
  std::vector<Rational> left(n), right(n);
  left[0] = v[0];
  right[n - 1] = v[n - 1];
  for (size_t lvl = 1; lvl < n; ++lvl) {
    for (size_t i = 0; i + lvl < n; ++i) v[i] = s * v[i] + t * v[i + 1];
    left[lvl] = v[0];
    right[n - 1 - lvl] = v[n - 1 - lvl];
  }
  return {BernsteinCoeffs{B.a, m, std::move(left)}, BernsteinCoeffs{m, B.b, std::move(right)}};
}

/// Number of sign variations in the list with zeroes removed.
inline long sign_variations(const std::vector<Rational>& coeffs) {
  long var = 0;
  int prev = 0;
  for (const auto& c : coeffs) {
    int s = sign(c);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

inline long sign_variations(const BernsteinCoeffs& b) { return sign_variations(b.coeffs); }

// ---------------------------------------------------------------------------
// Polynomial root finding with evaluation.
// ---------------------------------------------------------------------------

/// Interval known to contain roots, with the caller's accepted payload.
template <typename Payload>
struct RootRegion {
  RatInterval interval;
  Payload value;
};

inline long default_node_cap(long fallback = 1000000) {
  if (const char* s = std::getenv("EXACTFN_NODE_CAP")) {
    long v = std::atol(s);
    if (v > 0) return v;
  }
  return fallback;
}

/**
 * @brief Root finding with evaluation: every real root of P in [l, r] ends up
 * inside one of the returned intervals, each of which passed the caller's
 * acceptance check ok(e(I)).
 *
 * Termination requires that every x in [l,r] has a neighbourhood size eps with
 * ok(e(I)) for all I containing x with |I| < eps; a node cap guards against a
 * violated precondition and reports a Numeric error.
 */
template <typename Payload>
Errored<std::vector<RootRegion<Payload>>> find_roots_with_evaluation(
    const MonomialPoly& poly, const RatInterval& dom,
    const std::function<Payload(const RatInterval&)>& e,
    const std::function<bool(const Payload&)>& ok, long node_cap = default_node_cap()) {
  using Out = std::vector<RootRegion<Payload>>;
  Out res;
  if (poly.is_zero())
    return Errored<Out>::certain(ErrorKind::Numeric,
                                 "find_roots_with_evaluation: zero polynomial");
  if (poly.degree() == 0) return Errored<Out>(std::move(res));

  struct Node {
    RatInterval iv;
    BernsteinCoeffs b;
  };
  std::list<Node> work;
  work.push_back(Node{dom, to_bernstein(poly, dom.lo, dom.hi)});
  long visited = 0;

  // Accept a region; by the termination precondition ok holds on small-enough
  // intervals, so a point interval at an exact root is always acceptable.
  auto accept = [&](const RatInterval& iv) -> bool {
    Payload v = e(iv);
    if (!ok(v)) return false;
    res.push_back(RootRegion<Payload>{iv, std::move(v)});
    return true;
  };

  while (!work.empty()) {
    if (++visited > node_cap) {
      Errored<Out> err = Errored<Out>::certain(
          ErrorKind::Numeric, "find_roots_with_evaluation: node cap exceeded");
      return err;
    }
    Node node = std::move(work.front());
    work.pop_front();
    long var = sign_variations(node.b);
    if (var == 0) continue;

    Rational m = node.iv.midpoint();
    int sm = poly.sign_at(m);

    if (var == 1) {
      if (sm == 0) {
        // The unique root is hit exactly; keep the degenerate interval.
        RatInterval pt{m};
        if (!accept(pt))
          return Errored<Out>::certain(
              ErrorKind::Numeric, "find_roots_with_evaluation: ok() rejected a point interval");
        continue;
      }
      int sl = poly.sign_at(node.iv.lo);
      int sr = poly.sign_at(node.iv.hi);
      int keep = 0;  // 1 = left, 2 = right, 0 = undecided (endpoint zeroes)
      if (sl != 0 && sl != sm) keep = 1;
      else if (sr != 0 && sm != sr) keep = 2;
      if (keep != 0) {
        RatInterval half = keep == 1 ? RatInterval(node.iv.lo, m) : RatInterval(m, node.iv.hi);
        if (!accept(half)) {
          auto parts = split_bernstein(node.b, m);
          work.push_back(Node{half, keep == 1 ? std::move(parts.first) : std::move(parts.second)});
        }
        continue;
      }
      // A zero at an endpoint leaves the sign change invisible; fall through
      // and treat the node like the var > 1 case, which preserves coverage.
    }

    auto parts = split_bernstein(node.b, m);
    if (sm == 0) {
      // A root sits exactly on the bisection point; the open halves cannot
      // see it through sign variations, so keep it as a point region.
      RatInterval pt{m};
      if (!accept(pt))
        return Errored<Out>::certain(
            ErrorKind::Numeric, "find_roots_with_evaluation: ok() rejected a point interval");
    }
    RatInterval left(node.iv.lo, m), right(m, node.iv.hi);
    if (!accept(left)) work.push_back(Node{left, std::move(parts.first)});
    if (!accept(right)) work.push_back(Node{right, std::move(parts.second)});
  }
  return Errored<Out>(std::move(res));
}

}  // namespace exactfn
