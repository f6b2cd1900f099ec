#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "exactfn/dyadic.hpp"
#include "exactfn/errors.hpp"
#include "exactfn/interval.hpp"

namespace exactfn {

/// Mantissa width used when rounding ball centres.
struct Precision {
  int bits = 53;
  Precision() = default;
  explicit Precision(int b) : bits(b < 2 ? 2 : b) {}
  friend bool operator==(Precision a, Precision b) { return a.bits == b.bits; }
};

inline Precision max_prec(Precision a, Precision b) { return a.bits >= b.bits ? a : b; }

/// Radius mantissas are kept at a fixed 53 bits, rounded upward.
inline constexpr unsigned long kRadiusBits = 53;

/**
 * @brief Accuracy request: a strict bound on the radius (radius < 2^-strict)
 * plus an indicative guide used to tune internal effort.
 */
struct Accuracy {
  int strict = 53;
  int guide = 63;
  Accuracy() = default;
  explicit Accuracy(int s) : strict(s), guide(s + 10) {}
  Accuracy(int s, int g) : strict(s), guide(g) {}
};

inline Accuracy bitsS(int s) { return Accuracy(s); }
inline Accuracy bitsSG(int s, int g) { return Accuracy(s, g); }

/**
 * @brief Ball [centre - radius, centre + radius] with dyadic centre and radius.
 *
 * Every operation returns a ball whose set contains the image of the operand
 * sets; binary operations use the higher of the two operand precisions, and
 * centre rounding errors are folded into the radius.
 */
class Ball {
 public:
  Ball() : centre_(), radius_(), prec_() {}

  Ball(const Dyadic& centre_raw, const Dyadic& radius_raw, Precision p) : prec_(p) {
    Dyadic err;
    centre_ = centre_raw.round_to_bits(static_cast<unsigned long>(p.bits), Round::Nearest, &err);
    Dyadic r = radius_raw + err;
    if (r.sign() < 0) throw std::invalid_argument("Ball: negative radius");
    radius_ = r.round_to_bits(kRadiusBits, Round::Up);
  }

  static Ball exact(const Dyadic& d, Precision p = Precision()) { return Ball(d, Dyadic(), p); }
  static Ball exact(long v, Precision p = Precision()) { return exact(Dyadic(v), p); }

  static Ball from_rational(const mpq_class& q, Precision p = Precision()) {
    Dyadic lo = Dyadic::from_rational(q, static_cast<unsigned long>(p.bits) + 2, Round::Down);
    Dyadic hi = Dyadic::from_rational(q, static_cast<unsigned long>(p.bits) + 2, Round::Up);
    return from_endpoints(lo, hi, p);
  }

  static Ball from_endpoints(const Dyadic& lo, const Dyadic& hi, Precision p = Precision()) {
    if (lo > hi) throw std::invalid_argument("Ball::from_endpoints: lo > hi");
    Dyadic c = (lo + hi).mul_pow2(-1);
    Dyadic r = (hi - lo).mul_pow2(-1);
    return Ball(c, r, p);
  }

  static Ball from_interval(const DyadicInterval& iv, Precision p = Precision()) {
    return from_endpoints(iv.lo, iv.hi, p);
  }

  const Dyadic& centre() const { return centre_; }
  const Dyadic& radius() const { return radius_; }
  Precision precision() const { return prec_; }

  Dyadic lo() const { return centre_ - radius_; }
  Dyadic hi() const { return centre_ + radius_; }
  Dyadic width() const { return radius_.mul_pow2(1); }
  DyadicInterval to_interval() const { return DyadicInterval(lo(), hi()); }

  bool is_exact() const { return radius_.is_zero(); }
  bool contains(const Dyadic& x) const { return lo() <= x && x <= hi(); }
  bool contains(const mpq_class& q) const {
    return lo().to_rational() <= q && q <= hi().to_rational();
  }
  bool contains(const Ball& o) const { return lo() <= o.lo() && o.hi() <= hi(); }
  bool contains_zero() const { return contains(Dyadic(0)); }

  /// radius < 2^-bits ?  (mag2_upper is a strict bound for odd mantissas)
  bool radius_below(long bits) const {
    if (radius_.is_zero()) return true;
    return radius_.mag2_upper() <= -bits;
  }

  Ball operator-() const { return Ball(-centre_, radius_, prec_); }

  friend Ball operator+(const Ball& a, const Ball& b) {
    return Ball(a.centre_ + b.centre_, a.radius_ + b.radius_, max_prec(a.prec_, b.prec_));
  }
  friend Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

  friend Ball operator*(const Ball& a, const Ball& b) {
    Dyadic c = a.centre_ * b.centre_;
    Dyadic r = a.centre_.abs() * b.radius_ + b.centre_.abs() * a.radius_ + a.radius_ * b.radius_;
    return Ball(c, r, max_prec(a.prec_, b.prec_));
  }

  Ball scale(const Dyadic& k) const { return Ball(centre_ * k, radius_ * k.abs(), prec_); }
  Ball scale(long k) const { return scale(Dyadic(k)); }

  Ball abs() const {
    Dyadic l = lo(), h = hi();
    if (l.sign() >= 0) return *this;
    if (h.sign() <= 0) return -*this;
    return from_endpoints(Dyadic(0), Dyadic::max(h, -l), prec_);
  }

  static Ball min(const Ball& a, const Ball& b) {
    return from_endpoints(Dyadic::min(a.lo(), b.lo()), Dyadic::min(a.hi(), b.hi()),
                          max_prec(a.prec_, b.prec_));
  }
  static Ball max(const Ball& a, const Ball& b) {
    return from_endpoints(Dyadic::max(a.lo(), b.lo()), Dyadic::max(a.hi(), b.hi()),
                          max_prec(a.prec_, b.prec_));
  }

  static std::optional<Ball> intersect(const Ball& a, const Ball& b) {
    Dyadic l = Dyadic::max(a.lo(), b.lo());
    Dyadic h = Dyadic::min(a.hi(), b.hi());
    if (l > h) return std::nullopt;
    return from_endpoints(l, h, max_prec(a.prec_, b.prec_));
  }

  static Ball hull(const Ball& a, const Ball& b) {
    return from_endpoints(Dyadic::min(a.lo(), b.lo()), Dyadic::max(a.hi(), b.hi()),
                          max_prec(a.prec_, b.prec_));
  }

  Ball with_precision(Precision p) const { return Ball(centre_, radius_, p); }

  std::string to_string(size_t digits = 0) const;

 private:
  Dyadic centre_;
  Dyadic radius_;
  Precision prec_;
};

inline Ball operator+(const Ball& a, long v) { return a + Ball::exact(v, a.precision()); }
inline Ball operator+(long v, const Ball& a) { return a + v; }
inline Ball operator-(const Ball& a, long v) { return a - Ball::exact(v, a.precision()); }
inline Ball operator*(const Ball& a, long v) { return a.scale(v); }
inline Ball operator*(long v, const Ball& a) { return a.scale(v); }

/// Kleenean comparisons: True iff the relation holds for all pairs of points,
/// False iff it fails for all pairs, Unknown otherwise.
inline Kleenean less(const Ball& a, const Ball& b) {
  if (a.hi() < b.lo()) return Kleenean::True;
  if (a.lo() >= b.hi()) return Kleenean::False;
  return Kleenean::Unknown;
}
inline Kleenean leq(const Ball& a, const Ball& b) {
  if (a.hi() <= b.lo()) return Kleenean::True;
  if (a.lo() > b.hi()) return Kleenean::False;
  return Kleenean::Unknown;
}
inline Kleenean equal(const Ball& a, const Ball& b) {
  if (a.is_exact() && b.is_exact()) return kleenean(a.centre() == b.centre());
  if (a.hi() < b.lo() || b.hi() < a.lo()) return Kleenean::False;
  return Kleenean::Unknown;
}

/// Certainly-smaller order used by the maximisation queue.
inline bool certainly_smaller(const Ball& a, const Ball& b) { return a.hi() < b.lo(); }

/**
 * Smallest or second-smallest integer n with -2^n <= a <= 2^n.
 * The degenerate zero ball gets a large negative sentinel.
 */
inline long lognorm(const Ball& a) {
  Dyadic m = Dyadic::max(a.hi().abs(), a.lo().abs());
  if (m.is_zero()) return -(1L << 30);
  return m.mag2_upper();
}

inline Ball set_precision(const Ball& a, Precision p) { return a.with_precision(p); }

inline Errored<Ball> div(const Ball& a, const Ball& b) {
  if (b.is_exact() && b.centre().is_zero())
    return Errored<Ball>::certain(ErrorKind::DivisionByZero);
  if (b.contains_zero()) return Errored<Ball>::potential(ErrorKind::DivisionByZero);
  Precision p = max_prec(a.precision(), b.precision());
  unsigned long bits = static_cast<unsigned long>(p.bits);
  Dyadic q = Dyadic::div_rounded(a.centre(), b.centre(), bits + 4, Round::Nearest);
  // |x/y - q| <= (|a.c - q*b.c| + a.r + |q|*b.r) / (|b.c| - b.r)
  Dyadic num = (a.centre() - q * b.centre()).abs() + a.radius() + q.abs() * b.radius();
  Dyadic den = b.centre().abs() - b.radius();
  Dyadic r = num.is_zero() ? Dyadic()
                           : Dyadic::div_rounded(num, den, kRadiusBits, Round::Up);
  return Errored<Ball>(Ball(q, r, p));
}

inline Errored<Ball> recip(const Ball& b) { return div(Ball::exact(1, b.precision()), b); }

namespace detail {

inline void mpfr_from_dyadic(mpfr_t t, const Dyadic& x) {
  unsigned long bits = std::max<unsigned long>(x.mantissa_bits(), 2);
  mpfr_set_prec(t, static_cast<mpfr_prec_t>(bits));
  mpfr_set_z_2exp(t, x.mantissa().get_mpz_t(), x.exponent(), MPFR_RNDN);  // exact
}

inline Dyadic dyadic_from_mpfr(const mpfr_t t) {
  if (mpfr_zero_p(t)) return Dyadic();
  mpz_class m;
  long e = static_cast<long>(mpfr_get_z_2exp(m.get_mpz_t(), t));
  return Dyadic(m, e);
}

enum class Elem { Sqrt, Sin, Cos };

/// Enclosure [lo, hi] of fn(x) computed at `prec` bits with directed rounding.
inline std::pair<Dyadic, Dyadic> elem_enclosure(Elem fn, const Dyadic& x, long prec) {
  mpfr_t in, lo, hi;
  mpfr_init2(in, 2);
  mpfr_from_dyadic(in, x);
  mpfr_init2(lo, static_cast<mpfr_prec_t>(prec));
  mpfr_init2(hi, static_cast<mpfr_prec_t>(prec));
  switch (fn) {
    case Elem::Sqrt:
      mpfr_sqrt(lo, in, MPFR_RNDD);
      mpfr_sqrt(hi, in, MPFR_RNDU);
      break;
    case Elem::Sin:
      mpfr_sin(lo, in, MPFR_RNDD);
      mpfr_sin(hi, in, MPFR_RNDU);
      break;
    case Elem::Cos:
      mpfr_cos(lo, in, MPFR_RNDD);
      mpfr_cos(hi, in, MPFR_RNDU);
      break;
  }
  auto out = std::make_pair(dyadic_from_mpfr(lo), dyadic_from_mpfr(hi));
  mpfr_clear(in);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

}  // namespace detail

/// Enclosure of pi at the given precision.
inline Ball pi_ball(Precision p = Precision()) {
  mpfr_t lo, hi;
  mpfr_init2(lo, static_cast<mpfr_prec_t>(p.bits + 8));
  mpfr_init2(hi, static_cast<mpfr_prec_t>(p.bits + 8));
  mpfr_const_pi(lo, MPFR_RNDD);
  mpfr_const_pi(hi, MPFR_RNDU);
  Ball b = Ball::from_endpoints(detail::dyadic_from_mpfr(lo), detail::dyadic_from_mpfr(hi), p);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return b;
}

inline Errored<Ball> sqrt(const Ball& a) {
  Precision p = a.precision();
  long prec = p.bits + 8;
  Dyadic l = a.lo(), h = a.hi();
  if (h.sign() < 0) return Errored<Ball>::certain(ErrorKind::OutOfDomain, "sqrt of negative");
  Dyadic hu = detail::elem_enclosure(detail::Elem::Sqrt, h, prec).second;
  if (l.sign() >= 0) {
    Dyadic ld = detail::elem_enclosure(detail::Elem::Sqrt, l, prec).first;
    return Errored<Ball>(Ball::from_endpoints(ld, hu, p));
  }
  // Straddles zero: enclose sqrt restricted to the non-negative part.
  return Errored<Ball>::potential_with(Ball::from_endpoints(Dyadic(0), hu, p),
                                       ErrorKind::OutOfDomain, "sqrt of possibly negative");
}

inline Ball sqrt_abs(const Ball& a) {
  auto r = sqrt(a.abs());
  return r.value();  // abs() makes the argument non-negative, so always defined
}

namespace detail {

inline Ball sin_or_cos(Elem fn, const Ball& a) {
  Precision p = a.precision();
  auto [lo, hi] = elem_enclosure(fn, a.centre(), p.bits + 8);
  // |sin'|,|cos'| <= 1, and the image always stays within [-1, 1].
  Dyadic l = Dyadic::max(lo - a.radius(), Dyadic(-1));
  Dyadic h = Dyadic::min(hi + a.radius(), Dyadic(1));
  if (l > h) {  // can only happen through rounding of near-extremal values
    Dyadic m = (l + h).mul_pow2(-1);
    l = h = m;
  }
  return Ball::from_endpoints(l, h, p);
}

}  // namespace detail

inline Ball sin(const Ball& a) { return detail::sin_or_cos(detail::Elem::Sin, a); }
inline Ball cos(const Ball& a) { return detail::sin_or_cos(detail::Elem::Cos, a); }

inline std::string Ball::to_string(size_t digits) const {
  if (digits == 0)
    digits = static_cast<size_t>(std::ceil(prec_.bits * 0.30103)) + 1;
  std::string c = centre_.to_decimal(digits);
  if (radius_.is_zero()) return "[" + c + " \xC2\xB1 0]";
  long k = radius_.mag2_upper();  // radius < 2^k strictly (mantissa is odd)
  return "[" + c + " \xC2\xB1 <2^(" + std::to_string(k) + ")]";
}

}  // namespace exactfn
