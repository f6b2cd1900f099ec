#pragma once

#include <vector>

#include "exactfn/rational.hpp"

namespace exactfn {

/// Polynomial with exact rational coefficients in the monomial basis.
class MonomialPoly {
 public:
  MonomialPoly() = default;
  explicit MonomialPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static MonomialPoly constant(const Rational& v) { return MonomialPoly({v}); }
  static MonomialPoly identity() { return MonomialPoly({Rational(0), Rational(1)}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero

  const Rational& coeff(size_t k) const {
    static const Rational zero(0);
    return k < c_.size() ? c_[k] : zero;
  }

  Rational eval(const Rational& x) const {
    Rational r(0);
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
  }

  int sign_at(const Rational& x) const { return sign(eval(x)); }

  /// Exact interval Horner enclosure of the range over `iv`.
  RatInterval eval_interval(const RatInterval& iv) const {
    RatInterval r{Rational(0)};
    for (size_t k = c_.size(); k-- > 0;) r = r * iv + Rational(c_[k]);
    return r;
  }

  MonomialPoly derivative() const {
    if (c_.size() <= 1) return MonomialPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
    return MonomialPoly(std::move(d));
  }

  friend MonomialPoly operator+(const MonomialPoly& a, const MonomialPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
    return MonomialPoly(std::move(out));
  }
  MonomialPoly operator-() const {
    std::vector<Rational> out(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) out[k] = -c_[k];
    return MonomialPoly(std::move(out));
  }
  friend MonomialPoly operator-(const MonomialPoly& a, const MonomialPoly& b) { return a + (-b); }

  friend MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b) {
    if (a.is_zero() || b.is_zero()) return MonomialPoly();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return MonomialPoly(std::move(out));
  }

  MonomialPoly scaled(const Rational& k) const {
    std::vector<Rational> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * k;
    return MonomialPoly(std::move(out));
  }

  /// lcm of the coefficient denominators: lcm * P has integer coefficients.
  mpz_class denominator_lcm() const {
    mpz_class l(1);
    for (const auto& q : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    return l;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (!s.empty()) s += " + ";
      s += c_[k].get_str() + (k ? "*x^" + std::to_string(k) : "");
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace exactfn
