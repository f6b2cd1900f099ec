#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exactfn/ball.hpp"
#include "exactfn/monomial.hpp"
#include "exactfn/rational.hpp"

namespace exactfn {

/**
 * @brief One-piece rigorous polynomial model: dyadic Chebyshev-T coefficients
 * over the domain mapped affinely onto [-1,1], plus an error radius.
 *
 * The represented set is { g : |g(x) - p(x)| <= radius for all x in domain }.
 * Only the constant term carries error; all other coefficients are exact.
 * The accuracy guide drives automatic sweeping of insignificant terms.
 */
class ChebPolyBall {
 public:
  ChebPolyBall() : dom_(DyadicInterval::unit()), coeffs_{Dyadic(0)}, radius_(), guide_(53) {}

  ChebPolyBall(DyadicInterval dom, std::vector<Dyadic> coeffs, Dyadic radius, int guide)
      : dom_(std::move(dom)), coeffs_(std::move(coeffs)), radius_(std::move(radius)),
        guide_(guide) {
    if (radius_.sign() < 0) throw std::invalid_argument("ChebPolyBall: negative radius");
    if (coeffs_.empty()) coeffs_.push_back(Dyadic(0));
    strip();
  }

  /// Identity function on the domain: x = mid + half * u, exactly.
  static ChebPolyBall var_fn(const DyadicInterval& dom, int guide = 53) {
    if (!(dom.lo < dom.hi)) throw std::invalid_argument("var_fn: empty domain");
    return ChebPolyBall(dom, {dom.midpoint(), dom.width().mul_pow2(-1)}, Dyadic(), guide);
  }

  static ChebPolyBall const_fn(const Dyadic& c, const DyadicInterval& dom, int guide = 53) {
    return ChebPolyBall(dom, {c}, Dyadic(), guide);
  }

  const DyadicInterval& domain() const { return dom_; }
  const std::vector<Dyadic>& coeffs() const { return coeffs_; }
  const Dyadic& radius() const { return radius_; }
  int guide() const { return guide_; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  Dyadic width() const { return radius_.mul_pow2(1); }

  Dyadic mid() const { return dom_.midpoint(); }
  Dyadic half() const { return dom_.width().mul_pow2(-1); }

  ChebPolyBall with_radius(const Dyadic& r) const {
    return ChebPolyBall(dom_, coeffs_, r, guide_);
  }
  ChebPolyBall with_guide(int g) const { return ChebPolyBall(dom_, coeffs_, radius_, g); }
  ChebPolyBall centre_model() const { return ChebPolyBall(dom_, coeffs_, Dyadic(), guide_); }

  /// Upper bound for sup |centre polynomial| over the domain.
  Dyadic coeff_sum_bound() const {
    Dyadic s;
    for (const auto& c : coeffs_) s = s + c.abs();
    return s;
  }

  // --- evaluation ---------------------------------------------------------

  /// Internal coordinate of x as a ball: u = (x - mid)/half.
  Ball internal_coord(const Ball& x) const {
    Ball t = x - Ball::exact(mid(), x.precision());
    Dyadic h = half();
    if (h.mantissa() == 1) return t.scale(Dyadic::pow2(-h.exponent()));
    auto d = div(t, Ball::exact(h, x.precision()));
    return d.value();  // half > 0, never fails
  }

  /// Clenshaw evaluation; encloses {g(t): g in model, t in x}.
  Ball eval(const Ball& x) const {
    Precision p = max_prec(x.precision(), Precision(53));
    Ball u = internal_coord(x).with_precision(p);
    Ball b1 = Ball::exact(0L, p), b2 = b1;
    Ball two_u = u.scale(2);
    for (size_t k = coeffs_.size(); k-- > 1;) {
      Ball t = Ball::exact(coeffs_[k], p) + two_u * b1 - b2;
      b2 = b1;
      b1 = t;
    }
    Ball v = Ball::exact(coeffs_[0], p) + u * b1 - b2;
    return v + Ball(Dyadic(), radius_, p);
  }

  Ball eval(const Dyadic& x, Precision p = Precision()) const { return eval(Ball::exact(x, p)); }

  /// Exact rational evaluation of the centre polynomial at a domain point.
  Rational eval_centre_rational(const Rational& x) const {
    Rational u = (x - rational_of(mid())) / rational_of(half());
    Rational b1(0), b2(0);
    for (size_t k = coeffs_.size(); k-- > 1;) {
      Rational t = rational_of(coeffs_[k]) + 2 * u * b1 - b2;
      b2 = b1;
      b1 = t;
    }
    return rational_of(coeffs_[0]) + u * b1 - b2;
  }

  // --- arithmetic ---------------------------------------------------------

  friend ChebPolyBall operator+(const ChebPolyBall& a, const ChebPolyBall& b) {
    a.check_same_domain(b);
    std::vector<Dyadic> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
    ChebPolyBall r(a.dom_, std::move(out), a.radius_ + b.radius_,
                   std::min(a.guide_, b.guide_));
    return r.sweep();
  }

  ChebPolyBall operator-() const {
    std::vector<Dyadic> out(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k) out[k] = -coeffs_[k];
    return ChebPolyBall(dom_, std::move(out), radius_, guide_);
  }

  friend ChebPolyBall operator-(const ChebPolyBall& a, const ChebPolyBall& b) { return a + (-b); }

  ChebPolyBall scale(const Dyadic& k) const {
    std::vector<Dyadic> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] * k;
    return ChebPolyBall(dom_, std::move(out), radius_ * k.abs(), guide_);
  }
  ChebPolyBall scale(long k) const { return scale(Dyadic(k)); }

  /// Multiply by a scalar ball [s +- r].
  ChebPolyBall scale_ball(const Ball& s) const {
    ChebPolyBall out = scale(s.centre());
    Dyadic extra = s.radius() * (coeff_sum_bound() + radius_);
    return out.with_radius(out.radius() + extra).sweep();
  }

  friend ChebPolyBall operator*(const ChebPolyBall& a, const ChebPolyBall& b) {
    a.check_same_domain(b);
    // T_i * T_j = (T_{i+j} + T_{|i-j|}) / 2, exactly in dyadics.
    std::vector<Dyadic> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        Dyadic t = (a.coeffs_[i] * b.coeffs_[j]).mul_pow2(-1);
        out[i + j] = out[i + j] + t;
        size_t k = i >= j ? i - j : j - i;
        out[k] = out[k] + t;
      }
    }
    Dyadic ba = a.coeff_sum_bound(), bb = b.coeff_sum_bound();
    Dyadic r = ba * b.radius_ + bb * a.radius_ + a.radius_ * b.radius_;
    ChebPolyBall res(a.dom_, std::move(out), r, std::min(a.guide_, b.guide_));
    return res.sweep();
  }

  // --- sweeping and degree reduction --------------------------------------

  /**
   * Drop insignificant Chebyshev terms: a term is insignificant when
   * |c_k| <= 2^-(guide+2) / (degree+1); dropped magnitudes join the radius.
   */
  ChebPolyBall sweep() const {
    if (coeffs_.size() <= 1) return *this;
    long d = degree();
    // |c| * (d+1) <= 2^-(guide+2), exactly.
    Dyadic limit = Dyadic::pow2(-(static_cast<long>(guide_) + 2));
    std::vector<Dyadic> out;
    out.reserve(coeffs_.size());
    out.push_back(coeffs_[0]);
    Dyadic dropped;
    for (size_t k = 1; k < coeffs_.size(); ++k) {
      if (coeffs_[k].abs() * Dyadic(d + 1) <= limit) {
        dropped = dropped + coeffs_[k].abs();
        out.push_back(Dyadic(0));
      } else {
        out.push_back(coeffs_[k]);
      }
    }
    return ChebPolyBall(dom_, std::move(out), radius_ + dropped, guide_);
  }

  /// Truncate to degree <= d; dropped coefficient magnitudes join the radius.
  ChebPolyBall reduce_degree(long d) const {
    if (d < 0) throw std::invalid_argument("reduce_degree: negative degree");
    if (degree() <= d) return *this;
    Dyadic dropped;
    std::vector<Dyadic> out(coeffs_.begin(), coeffs_.begin() + (d + 1));
    for (size_t k = static_cast<size_t>(d) + 1; k < coeffs_.size(); ++k)
      dropped = dropped + coeffs_[k].abs();
    return ChebPolyBall(dom_, std::move(out), radius_ + dropped, guide_);
  }

  // --- basis conversion ----------------------------------------------------

  /// Exact monomial form over the internal [-1,1] coordinate.
  MonomialPoly to_monomial() const {
    // Accumulate c_k * T_k with the recurrence T_{k+1} = 2 x T_k - T_{k-1}.
    std::vector<Rational> acc(coeffs_.size(), Rational(0));
    std::vector<Rational> tkm1{Rational(1)};          // T_0
    std::vector<Rational> tk{Rational(0), Rational(1)};  // T_1
    for (size_t k = 0; k < coeffs_.size(); ++k) {
      const std::vector<Rational>& t = k == 0 ? tkm1 : tk;
      if (!coeffs_[k].is_zero()) {
        Rational c = rational_of(coeffs_[k]);
        for (size_t j = 0; j < t.size(); ++j) acc[j] += c * t[j];
      }
      if (k >= 1 && k + 1 < coeffs_.size()) {
        std::vector<Rational> next(k + 2, Rational(0));
        for (size_t j = 0; j < tk.size(); ++j) next[j + 1] += 2 * tk[j];
        for (size_t j = 0; j < tkm1.size(); ++j) next[j] -= tkm1[j];
        tkm1 = std::move(tk);
        tk = std::move(next);
      }
    }
    return MonomialPoly(std::move(acc));
  }

  /// Exact monomial form in the domain coordinate (affine recomposition).
  MonomialPoly to_monomial_domain() const {
    MonomialPoly internal = to_monomial();
    // u = (x - mid)/half: compose internal with the affine map.
    Rational inv_half = Rational(1) / rational_of(half());
    Rational shift = -rational_of(mid()) * inv_half;
    // q(x) = internal(inv_half * x + shift): scale then shift.
    MonomialPoly scaled = transform_like_co(internal, inv_half);
    return taylor_shift(scaled, shift);
  }

  /**
   * From monomial coefficients over the internal coordinate. Exact when the
   * coefficient denominators are powers of two; otherwise coefficients are
   * rounded and the error joins the radius.
   */
  static ChebPolyBall from_monomial(const MonomialPoly& m, const DyadicInterval& dom,
                                    int guide = 53, unsigned long round_bits = 256) {
    // x^k = 2^(1-k) * sum' binom(k, (k-j)/2) T_j  (j = k, k-2, ...; j=0 halved)
    size_t n = m.coeffs().size();
    std::vector<Rational> acc(std::max<size_t>(n, 1), Rational(0));
    for (size_t k = 0; k < n; ++k) {
      if (sign(m.coeffs()[k]) == 0) continue;
      Rational c = m.coeffs()[k];
      if (k == 0) {
        acc[0] += c;
        continue;
      }
      mpz_class binom(1);  // binom(k, i) walking i = 0..
      for (size_t i = 0;; ++i) {
        size_t j = k - 2 * i;  // target Chebyshev index
        Rational term = c * Rational(binom) / Rational(mpz_class(1) << (k - 1));
        if (j == 0) term /= 2;
        acc[j] += term;
        if (j <= 1) break;
        binom *= static_cast<unsigned long>(k - i);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                        static_cast<unsigned long>(i + 1));
      }
    }
    std::vector<Dyadic> out(acc.size());
    Dyadic err;
    for (size_t j = 0; j < acc.size(); ++j) {
      Dyadic lo = Dyadic::from_rational(acc[j], round_bits, Round::Down);
      Dyadic hi = Dyadic::from_rational(acc[j], round_bits, Round::Up);
      out[j] = lo;
      err = err + (hi - lo);
    }
    return ChebPolyBall(dom, std::move(out), err, guide);
  }

  // --- calculus -------------------------------------------------------------

  /**
   * Derivative of the centre polynomial as a model (radius covers only the
   * rounding of the domain rescaling, not members' derivatives).
   */
  ChebPolyBall derivative() const {
    if (coeffs_.size() <= 1) return const_fn(Dyadic(0), dom_, guide_);
    long d = degree();
    // internal-coordinate recurrence dc_{k-1} = dc_{k+1} + 2k c_k, exact
    std::vector<Dyadic> dc(static_cast<size_t>(d) + 2, Dyadic(0));
    for (long k = d; k >= 1; --k)
      dc[static_cast<size_t>(k - 1)] =
          dc[static_cast<size_t>(k + 1)] + coeffs_[static_cast<size_t>(k)].mul_pow2(1) * Dyadic(k);
    dc[0] = dc[0].mul_pow2(-1);
    dc.resize(static_cast<size_t>(d));
    // chain rule: d/dx = (1/half) d/du
    Dyadic h = half();
    if (h.mantissa() == 1)
      return ChebPolyBall(dom_, scale_all(dc, Dyadic::pow2(-h.exponent())), Dyadic(), guide_);
    ChebPolyBall internal(dom_, std::move(dc), Dyadic(), guide_);
    Ball inv = recip(Ball::exact(h, Precision(128))).value();
    return internal.scale_ball(inv);
  }

  /**
   * Antiderivative that vanishes at the domain's left endpoint. The input
   * radius contributes radius * (domain width) to the output radius.
   */
  ChebPolyBall antiderivative_from_lo(unsigned long round_bits = 192) const;

  /// Exact-up-to-rounding integral over [u, v] (subinterval of the domain).
  Ball integral_over(const Dyadic& u, const Dyadic& v, Precision p = Precision()) const;

  // --- rendering -------------------------------------------------------------

  /// Monomial-style rendering "[c0 +- r] + c1*x + c2*x^2 ..." over the domain.
  std::string to_string_monomial(size_t digits = 6) const;

 private:
  const Dyadic& coeff(size_t k) const {
    static const Dyadic zero;
    return k < coeffs_.size() ? coeffs_[k] : zero;
  }

  void check_same_domain(const ChebPolyBall& other) const {
    if (!(dom_ == other.dom_))
      throw std::invalid_argument("ChebPolyBall: domain mismatch");
  }

  void strip() {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  static std::vector<Dyadic> scale_all(const std::vector<Dyadic>& v, const Dyadic& k) {
    std::vector<Dyadic> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * k;
    return out;
  }

  static MonomialPoly transform_like_co(const MonomialPoly& p, const Rational& l) {
    std::vector<Rational> a(p.coeffs());
    Rational pw(1);
    for (size_t k = 1; k < a.size(); ++k) {
      pw *= l;
      a[k] *= pw;
    }
    return MonomialPoly(std::move(a));
  }

  static MonomialPoly taylor_shift(const MonomialPoly& p, const Rational& t) {
    std::vector<Rational> a(p.coeffs());
    if (a.size() <= 1) return MonomialPoly(std::move(a));
    size_t d = a.size() - 1;
    for (size_t k = 0; k < d; ++k)
      for (size_t j = d - 1; j + 1 > k; --j) a[j] += t * a[j + 1];
    return MonomialPoly(std::move(a));
  }

  DyadicInterval dom_;
  std::vector<Dyadic> coeffs_;
  Dyadic radius_;
  int guide_;
};

inline ChebPolyBall ChebPolyBall::antiderivative_from_lo(unsigned long round_bits) const {
  const long d = degree();
  std::vector<Rational> A(static_cast<size_t>(d) + 2, Rational(0));
  auto c = [&](long k) -> Rational {
    return k >= 0 && k <= d ? rational_of(coeffs_[static_cast<size_t>(k)]) : Rational(0);
  };
  if (d >= 0) A[1] = c(0) - c(2) / 2;
  for (long k = 2; k <= d + 1; ++k) A[static_cast<size_t>(k)] = (c(k - 1) - c(k + 1)) / (2 * k);
  // scale by half (du -> dx), then fix the constant so F(lo) = 0
  Rational h = rational_of(half());
  Rational a0(0);
  for (size_t k = 1; k < A.size(); ++k) {
    A[k] *= h;
    a0 += (k % 2 ? A[k] : -A[k]);  // - sum A_k T_k(-1) = - sum (-1)^k A_k
  }
  A[0] = a0;
  std::vector<Dyadic> out(A.size());
  Dyadic err;
  for (size_t k = 0; k < A.size(); ++k) {
    Dyadic lo = Dyadic::from_rational(A[k], round_bits, Round::Down);
    Dyadic hi = Dyadic::from_rational(A[k], round_bits, Round::Up);
    out[k] = lo;
    err = err + (hi - lo);
  }
  return ChebPolyBall(dom_, std::move(out), err + radius_ * dom_.width(), guide_);
}

inline Ball ChebPolyBall::integral_over(const Dyadic& u, const Dyadic& v, Precision p) const {
  if (!(dom_.contains(u) && dom_.contains(v) && u <= v))
    throw std::invalid_argument("integral_over: bad bounds");
  Rational U = (rational_of(u) - rational_of(mid())) / rational_of(half());
  Rational V = (rational_of(v) - rational_of(mid())) / rational_of(half());
  auto g_eval = [&](const Rational& t) {
    // sum_k c_k * G_k(t), G_k the T_k antiderivative
    Rational tkm1(1), tk = t;  // T_0, T_1
    Rational total(0);
    const long d = degree();
    for (long k = 0; k <= d; ++k) {
      if (!coeffs_[static_cast<size_t>(k)].is_zero()) {
        Rational g;
        if (k == 0) g = t;
        else if (k == 1) g = t * t / 2;
        else {
          // need T_{k+1}, T_{k-1} at t; tk == T_k, tkm1 == T_{k-1}
          Rational tkp1 = 2 * t * tk - tkm1;
          g = (tkp1 / (k + 1) - tkm1 / (k - 1)) / 2;
        }
        total += rational_of(coeffs_[static_cast<size_t>(k)]) * g;
      }
      Rational tkp1 = 2 * t * tk - tkm1;
      tkm1 = tk;
      tk = tkp1;
    }
    return total;
  };
  Rational val = (g_eval(V) - g_eval(U)) * rational_of(half());
  Ball centre = Ball::from_rational(val, p);
  return centre + Ball(Dyadic(), radius_ * (v - u), p);
}

/**
 * @brief Chebyshev interpolation at second-kind points via a DCT-style sum.
 *
 * Returns the degree-d interpolant of f at the points mid + half*cos(j pi/d).
 * The radius covers only the arithmetic rounding of nodes, values and sums,
 * NOT the approximation error |f - h|; callers must validate that themselves.
 */
inline ChebPolyBall cheb_interpolate(const std::function<Ball(const Ball&)>& f, long d,
                                     const DyadicInterval& dom, int guide = 53) {
  if (d < 1) throw std::invalid_argument("cheb_interpolate: degree must be >= 1");
  long lg = 0;
  while ((1L << lg) < d) ++lg;
  Precision prec(static_cast<int>(std::max<long>(64, guide + 2 * lg + 16)));
  Ball pi = pi_ball(prec);
  Ball dinv = recip(Ball::exact(d, prec)).value();
  // cos(m*pi/d) for m = 0..d
  std::vector<Ball> ctab(static_cast<size_t>(d) + 1);
  ctab[0] = Ball::exact(1L, prec);
  ctab[static_cast<size_t>(d)] = Ball::exact(-1L, prec);
  for (long m = 1; m < d; ++m) ctab[static_cast<size_t>(m)] = cos(pi.scale(m) * dinv);
  auto cos_jk = [&](long j, long k) -> const Ball& {
    long m = (j * k) % (2 * d);
    if (m > d) m = 2 * d - m;
    return ctab[static_cast<size_t>(m)];
  };

  Dyadic mid = dom.midpoint();
  Dyadic half = dom.width().mul_pow2(-1);
  std::vector<Ball> values(static_cast<size_t>(d) + 1);
  for (long j = 0; j <= d; ++j) {
    Ball x = Ball::exact(mid, prec) + ctab[static_cast<size_t>(j)].scale(half);
    values[static_cast<size_t>(j)] = f(x);
  }

  std::vector<Dyadic> coeffs(static_cast<size_t>(d) + 1);
  Dyadic radius;
  for (long k = 0; k <= d; ++k) {
    Ball sum = (values[0] * cos_jk(0, k) + values[static_cast<size_t>(d)] * cos_jk(d, k))
                   .scale(Dyadic(mpz_class(1), -1));
    for (long j = 1; j < d; ++j) sum = sum + values[static_cast<size_t>(j)] * cos_jk(j, k);
    sum = (sum * dinv).scale(2);
    if (k == 0 || k == d) sum = sum.scale(Dyadic(mpz_class(1), -1));
    coeffs[static_cast<size_t>(k)] = sum.centre();
    radius = radius + sum.radius();
  }
  return ChebPolyBall(dom, std::move(coeffs), radius, guide);
}

inline std::string ChebPolyBall::to_string_monomial(size_t digits) const {
  MonomialPoly m = to_monomial_domain();
  std::string s =
      Ball(Dyadic::from_rational(m.coeff(0), 96, Round::Nearest), radius_, Precision(96))
          .to_string(digits);
  for (long k = 1; k <= m.degree(); ++k) {
    Rational c = m.coeff(static_cast<size_t>(k));
    if (sign(c) == 0) continue;
    s += " + [" + Dyadic::from_rational(c, 96, Round::Nearest).to_decimal(digits) +
         " \xC2\xB1 0]*x";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace exactfn
