#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "exactfn/dyadic.hpp"

namespace exactfn {

/// Closed interval [lo, hi] with dyadic endpoints.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  DyadicInterval() = default;
  DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("DyadicInterval: lo > hi");
  }

  static DyadicInterval unit() { return DyadicInterval(Dyadic(-1), Dyadic(1)); }

  Dyadic width() const { return hi - lo; }
  Dyadic midpoint() const { return (lo + hi).mul_pow2(-1); }

  bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
  bool contains(const DyadicInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool is_point() const { return lo == hi; }

  bool intersects(const DyadicInterval& o) const { return lo <= o.hi && o.lo <= hi; }

  std::pair<DyadicInterval, DyadicInterval> bisect() const {
    Dyadic m = midpoint();
    return {DyadicInterval(lo, m), DyadicInterval(m, hi)};
  }

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }

  std::string to_string() const {
    return "[" + lo.to_decimal(8) + ", " + hi.to_decimal(8) + "]";
  }
};

}  // namespace exactfn
