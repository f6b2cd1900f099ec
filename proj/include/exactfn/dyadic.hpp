#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace exactfn {

enum class Round { Nearest, Down, Up };  // Down/Up are toward -inf / +inf

/**
 * @brief Exact dyadic number m * 2^e with arbitrary-precision mantissa.
 *
 * Canonical form: the mantissa is odd or zero, and zero has exponent 0.
 * Addition, subtraction and multiplication are exact; rounding to a given
 * mantissa width is explicit and reports the discarded error.
 */
class Dyadic {
 public:
  Dyadic() : man_(0), exp_(0) {}
  Dyadic(long v) : man_(v), exp_(0) { canonicalize(); }
  Dyadic(int v) : man_(v), exp_(0) { canonicalize(); }
  Dyadic(const mpz_class& mantissa, long exponent) : man_(mantissa), exp_(exponent) {
    canonicalize();
  }

  static Dyadic pow2(long k) { return Dyadic(mpz_class(1), k); }

  /// Nearest dyadic with `bits` mantissa bits to the rational p/q (q > 0).
  static Dyadic from_rational(const mpq_class& q, unsigned long bits, Round mode = Round::Nearest);

  const mpz_class& mantissa() const { return man_; }
  long exponent() const { return exp_; }

  int sign() const { return mpz_sgn(man_.get_mpz_t()); }
  bool is_zero() const { return sign() == 0; }

  /// Number of bits in |mantissa| (0 for zero).
  unsigned long mantissa_bits() const {
    return is_zero() ? 0 : mpz_sizeinbase(man_.get_mpz_t(), 2);
  }

  Dyadic operator-() const { return Dyadic(-man_, exp_, NoCanon{}); }

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exp_ == b.exp_) return Dyadic(a.man_ + b.man_, a.exp_);
    const Dyadic& lo = a.exp_ <= b.exp_ ? a : b;
    const Dyadic& hi = a.exp_ <= b.exp_ ? b : a;
    mpz_class shifted;
    mpz_mul_2exp(shifted.get_mpz_t(), hi.man_.get_mpz_t(),
                 static_cast<unsigned long>(hi.exp_ - lo.exp_));
    return Dyadic(shifted + lo.man_, lo.exp_);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    return Dyadic(a.man_ * b.man_, a.exp_ + b.exp_, NoCanon{});
  }

  Dyadic mul_pow2(long k) const {
    if (is_zero()) return Dyadic();
    return Dyadic(man_, exp_ + k, NoCanon{});
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.man_ == b.man_;
  }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  static int compare(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // Same nonzero sign: compare magnitudes using bit lengths first.
    long ha = static_cast<long>(a.mantissa_bits()) + a.exp_;
    long hb = static_cast<long>(b.mantissa_bits()) + b.exp_;
    if (ha != hb) return (ha < hb) == (sa > 0) ? -1 : 1;
    Dyadic d = a - b;
    return d.sign();
  }

  static const Dyadic& min(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
  static const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }

  /**
   * Round to at most `bits` mantissa bits. `err`, when given, receives the
   * exact magnitude of the discarded part, so `|x - result| == *err`.
   */
  Dyadic round_to_bits(unsigned long bits, Round mode, Dyadic* err = nullptr) const {
    assert(bits >= 1);
    if (err) *err = Dyadic();
    unsigned long nb = mantissa_bits();
    if (nb <= bits) return *this;
    unsigned long shift = nb - bits;
    mpz_class q, r;
    mpz_fdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), shift);
    mpz_fdiv_r_2exp(r.get_mpz_t(), man_.get_mpz_t(), shift);  // 0 <= r < 2^shift
    // x = (q + r/2^shift) * 2^(exp+shift)
    bool bump;
    switch (mode) {
      case Round::Down: bump = false; break;
      case Round::Up: bump = mpz_sgn(r.get_mpz_t()) != 0; break;
      default: {
        mpz_class half;
        mpz_setbit(half.get_mpz_t(), shift - 1);
        bump = r >= half;
      }
    }
    if (bump) q += 1;
    if (err) {
      mpz_class rem = bump ? mpz_class(mpz_class(1) << shift) - r : r;
      *err = Dyadic(rem, exp_);
    }
    return Dyadic(q, exp_ + static_cast<long>(shift));
  }

  /**
   * Quotient a/b rounded to ~`bits` significant bits; direction `mode` is with
   * respect to the true quotient. b must be nonzero.
   */
  static Dyadic div_rounded(const Dyadic& a, const Dyadic& b, unsigned long bits, Round mode);

  mpq_class to_rational() const {
    mpq_class q(man_);
    if (exp_ >= 0) {
      mpz_class num = man_;
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(exp_));
      return mpq_class(num);
    }
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-exp_));
    q = mpq_class(man_, den);
    q.canonicalize();
    return q;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    // Round to 53 bits, then assemble; saturates to +-inf on overflow.
    Dyadic r = round_to_bits(53, Round::Nearest);
    double m = r.man_.get_d();
    long e = r.exp_;
    if (e > 3000) return sign() > 0 ? 1e400 : -1e400;
    if (e < -3000) {
      // ldexp handles gradual underflow
    }
    return std::ldexp(m, static_cast<int>(e < -3000 ? -3000 : e));
  }

  /// Smallest i such that |x| <= 2^i (mantissa_bits + exp). Requires nonzero.
  long mag2_upper() const {
    assert(!is_zero());
    return static_cast<long>(mantissa_bits()) + exp_;
  }

  /// Decimal rendering with `digits` significant digits (round to nearest-ish).
  std::string to_decimal(size_t digits = 12) const;

  std::string debug_string() const {
    return man_.get_str() + "*2^" + std::to_string(exp_);
  }

 private:
  struct NoCanon {};
  Dyadic(mpz_class m, long e, NoCanon) : man_(std::move(m)), exp_(e) { canonicalize(); }

  void canonicalize() {
    if (mpz_sgn(man_.get_mpz_t()) == 0) {
      exp_ = 0;
      return;
    }
    unsigned long tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
      exp_ += static_cast<long>(tz);
    }
  }

  mpz_class man_;
  long exp_;
};

inline Dyadic Dyadic::from_rational(const mpq_class& q, unsigned long bits, Round mode) {
  if (mpq_sgn(q.get_mpq_t()) == 0) return Dyadic();
  const mpz_class num = q.get_num();
  const mpz_class den = q.get_den();
  // Scale numerator so the integer quotient carries bits+2 significant bits.
  long nbits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  long dbits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long s = static_cast<long>(bits) + 2 - (nbits - dbits);
  if (s < 0) s = 0;
  mpz_class scaled = num;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(s));
  mpz_class quo, rem;
  mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  bool inexact = mpz_sgn(rem.get_mpz_t()) != 0;
  // value = (quo + rem/den) * 2^-s, 0 <= rem < den
  Dyadic approx(quo, -s);
  Dyadic ulp = Dyadic::pow2(-s);
  switch (mode) {
    case Round::Down: break;
    case Round::Up:
      if (inexact) approx = approx + ulp;
      break;
    default: {
      mpz_class twice = rem * 2;
      if (twice >= den) approx = approx + ulp;
    }
  }
  Dyadic out = approx.round_to_bits(bits, mode == Round::Nearest ? Round::Nearest : mode);
  return out;
}

inline Dyadic Dyadic::div_rounded(const Dyadic& a, const Dyadic& b, unsigned long bits,
                                  Round mode) {
  if (b.is_zero()) throw std::domain_error("Dyadic::div_rounded: division by zero");
  if (a.is_zero()) return Dyadic();
  bool negb = b.sign() < 0;
  mpq_class q(a.to_rational() / b.to_rational());
  // Direction of rounding flips are handled by from_rational on the signed value.
  (void)negb;
  return from_rational(q, bits, mode);
}

inline std::string Dyadic::to_decimal(size_t digits) const {
  if (is_zero()) return "0";
  mpf_class f(0, static_cast<unsigned long>(mantissa_bits() + 64));
  mpf_set_z(f.get_mpf_t(), man_.get_mpz_t());
  if (exp_ >= 0)
    mpf_mul_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<unsigned long>(exp_));
  else
    mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<unsigned long>(-exp_));
  mp_exp_t e10 = 0;
  std::string mant = f.get_str(e10, 10, digits);
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant = mant.substr(1);
  if (mant.empty()) mant = "0";
  std::string out;
  if (e10 <= 0) {
    out = "0." + std::string(static_cast<size_t>(-e10), '0') + mant;
  } else if (static_cast<size_t>(e10) >= mant.size()) {
    out = mant + std::string(static_cast<size_t>(e10) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<size_t>(e10)) + "." + mant.substr(static_cast<size_t>(e10));
  }
  return neg ? "-" + out : out;
}

}  // namespace exactfn
