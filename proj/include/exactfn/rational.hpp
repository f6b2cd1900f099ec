#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "exactfn/dyadic.hpp"

namespace exactfn {

using Rational = mpq_class;

inline Rational rational_of(const Dyadic& d) { return d.to_rational(); }
inline Rational rational_of(long n, long den = 1) {
  Rational q(n, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }
inline Rational abs(const Rational& q) { return sign(q) < 0 ? Rational(-q) : q; }

/// Compact interval with rational endpoints; all arithmetic is exact.
struct RatInterval {
  Rational lo;
  Rational hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
  }
  explicit RatInterval(const Rational& point) : lo(point), hi(point) {}

  static RatInterval hull(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
  }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo + b.lo, a.hi + b.hi);
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo - b.hi, a.hi - b.lo);
  }
  RatInterval operator-() const { return RatInterval(-hi, -lo); }

  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return RatInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                       std::max(std::max(p1, p2), std::max(p3, p4)));
  }

  friend RatInterval operator+(const RatInterval& a, const Rational& c) {
    return RatInterval(a.lo + c, a.hi + c);
  }
  friend RatInterval operator*(const RatInterval& a, const Rational& c) {
    if (sign(c) >= 0) return RatInterval(a.lo * c, a.hi * c);
    return RatInterval(a.hi * c, a.lo * c);
  }

  std::string to_string() const {
    return "[" + lo.get_str() + ", " + hi.get_str() + "]";
  }
};

}  // namespace exactfn
