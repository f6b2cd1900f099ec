#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "exactfn/ball.hpp"

namespace exactfn {

namespace detail {

/// Escalation cap for accuracy-driven retry loops.
inline constexpr int kRealEscalationCap = 24;

template <typename V>
struct MemoState {
  std::function<V(const Accuracy&)> fn;
  mutable std::mutex mu;
  mutable std::optional<V> best;
  mutable int best_strict = -(1 << 30);
};

}  // namespace detail

/**
 * @brief Exact real number: a function from accuracy requests to balls.
 *
 * query(q) returns a ball of radius < 2^-q.strict containing the number.
 * Queries are memoized; a cached higher-accuracy ball answers lower requests.
 */
class CauchyReal {
 public:
  CauchyReal() : CauchyReal(Dyadic(0)) {}
  explicit CauchyReal(std::function<Ball(const Accuracy&)> fn)
      : st_(std::make_shared<detail::MemoState<Ball>>()) {
    st_->fn = std::move(fn);
  }
  CauchyReal(const Dyadic& d)
      : CauchyReal([d](const Accuracy& q) {
          return Ball::exact(d, Precision(std::max(53, q.strict + 8)));
        }) {}
  CauchyReal(long v) : CauchyReal(Dyadic(v)) {}
  CauchyReal(const mpq_class& q)
      : CauchyReal([q](const Accuracy& a) {
          return Ball::from_rational(q, Precision(std::max(53, a.strict + 8)));
        }) {}

  Ball query(const Accuracy& q) const {
    std::lock_guard<std::mutex> lock(st_->mu);
    if (st_->best && st_->best_strict >= q.strict) return *st_->best;
    Ball b = st_->fn(q);
    if (!b.radius_below(q.strict))
      throw std::logic_error("CauchyReal: producer violated the radius contract");
    if (q.strict > st_->best_strict) {
      st_->best = b;
      st_->best_strict = q.strict;
    }
    return b;
  }
  Ball query(int strict_bits) const { return query(Accuracy(strict_bits)); }

  std::string to_string(int strict_bits = 120) const { return query(strict_bits).to_string(); }

 private:
  std::shared_ptr<detail::MemoState<Ball>> st_;
};

/// Exact real that may fail: accuracy requests yield error-collecting balls.
class CauchyRealErr {
 public:
  CauchyRealErr() = default;
  explicit CauchyRealErr(std::function<Errored<Ball>(const Accuracy&)> fn)
      : st_(std::make_shared<detail::MemoState<Errored<Ball>>>()) {
    st_->fn = std::move(fn);
  }
  CauchyRealErr(const CauchyReal& r)
      : CauchyRealErr([r](const Accuracy& q) { return Errored<Ball>(r.query(q)); }) {}

  Errored<Ball> query(const Accuracy& q) const {
    std::lock_guard<std::mutex> lock(st_->mu);
    if (st_->best && st_->best_strict >= q.strict) return *st_->best;
    Errored<Ball> b = st_->fn(q);
    if (q.strict > st_->best_strict) {
      st_->best = b;
      st_->best_strict = q.strict;
    }
    return b;
  }
  Errored<Ball> query(int strict_bits) const { return query(Accuracy(strict_bits)); }

  /// Keeps the value (if any) and discards error records; throws on certain error.
  CauchyReal require() const {
    auto st = st_;
    return CauchyReal([st](const Accuracy& q) {
      std::lock_guard<std::mutex> lock(st->mu);
      Errored<Ball> b = st->fn(q);
      if (!b.has_value())
        throw std::domain_error("CauchyRealErr::require: " + b.describe());
      return b.value();
    });
  }

 private:
  std::shared_ptr<detail::MemoState<Errored<Ball>>> st_;
};

/// Partial Boolean: accuracy-queried Kleenean with monotone verdicts.
class PartialBool {
 public:
  explicit PartialBool(std::function<Kleenean(const Accuracy&)> fn)
      : st_(std::make_shared<detail::MemoState<Kleenean>>()) {
    st_->fn = std::move(fn);
  }

  Kleenean query(const Accuracy& q) const {
    std::lock_guard<std::mutex> lock(st_->mu);
    if (st_->best && *st_->best != Kleenean::Unknown) return *st_->best;
    if (st_->best && st_->best_strict >= q.strict) return *st_->best;
    Kleenean k = st_->fn(q);
    if (q.strict > st_->best_strict || k != Kleenean::Unknown) {
      st_->best = k;
      st_->best_strict = std::max(st_->best_strict, q.strict);
    }
    return k;
  }
  Kleenean query(int strict_bits) const { return query(Accuracy(strict_bits)); }

 private:
  std::shared_ptr<detail::MemoState<Kleenean>> st_;
};

inline CauchyReal pi_real() {
  return CauchyReal([](const Accuracy& q) {
    return pi_ball(Precision(std::max(53, q.strict + 8)));
  });
}

namespace detail {

/// Query operands at escalating accuracy until `combine` meets the bound.
template <typename F>
Ball escalate(const Accuracy& q, F&& combine) {
  for (int extra = 2;; extra *= 2) {
    Ball b = combine(q.strict + extra);
    if (b.radius_below(q.strict)) return b;
    if (extra > (1 << kRealEscalationCap))
      throw std::runtime_error("CauchyReal: accuracy escalation cap exceeded");
  }
}

}  // namespace detail

inline CauchyReal operator+(const CauchyReal& a, const CauchyReal& b) {
  return CauchyReal([a, b](const Accuracy& q) {
    return detail::escalate(q, [&](int s) { return a.query(s) + b.query(s); });
  });
}

inline CauchyReal operator-(const CauchyReal& a) {
  return CauchyReal([a](const Accuracy& q) { return -a.query(q); });
}

inline CauchyReal operator-(const CauchyReal& a, const CauchyReal& b) { return a + (-b); }

inline CauchyReal operator*(const CauchyReal& a, const CauchyReal& b) {
  return CauchyReal([a, b](const Accuracy& q) {
    return detail::escalate(q, [&](int s) {
      // Widen by the partner's magnitude so the product radius lands below 2^-q.
      Ball pa = a.query(s), pb = b.query(s);
      long la = std::max(0L, lognorm(pb)), lb = std::max(0L, lognorm(pa));
      return a.query(s + static_cast<int>(la)) * b.query(s + static_cast<int>(lb));
    });
  });
}

inline CauchyReal scale(const CauchyReal& a, const Dyadic& k) {
  return CauchyReal([a, k](const Accuracy& q) {
    return detail::escalate(q, [&](int s) { return a.query(s).scale(k); });
  });
}

inline CauchyRealErr operator/(const CauchyReal& a, const CauchyReal& b) {
  return CauchyRealErr([a, b](const Accuracy& q) -> Errored<Ball> {
    for (int extra = 2;; extra *= 2) {
      Ball vb = b.query(q.strict + extra);
      if (vb.contains_zero()) {
        if (extra > (1 << detail::kRealEscalationCap))
          return Errored<Ball>::potential(ErrorKind::DivisionByZero);
        continue;
      }
      Errored<Ball> r = div(a.query(q.strict + extra), vb);
      if (r.has_value() && r.value().radius_below(q.strict)) return r;
      if (extra > (1 << detail::kRealEscalationCap))
        return Errored<Ball>::potential(ErrorKind::Numeric, "division escalation cap");
    }
  });
}

inline CauchyRealErr sqrt(const CauchyReal& a) {
  return CauchyRealErr([a](const Accuracy& q) -> Errored<Ball> {
    for (int extra = 2;; extra *= 2) {
      Errored<Ball> r = sqrt(a.query(q.strict + extra));
      if (r.has_certain_error()) return r;
      if (r.has_value() && r.value().radius_below(q.strict)) return r;
      if (extra > (1 << detail::kRealEscalationCap)) {
        if (r.has_value()) return r;  // potential error with conservative value
        return Errored<Ball>::potential(ErrorKind::Numeric, "sqrt escalation cap");
      }
    }
  });
}

namespace detail {

inline PartialBool real_compare(const CauchyReal& a, const CauchyReal& b,
                                std::function<Kleenean(const Ball&, const Ball&)> rel) {
  return PartialBool([a, b, rel](const Accuracy& q) {
    return rel(a.query(q), b.query(q));
  });
}

}  // namespace detail

inline PartialBool less(const CauchyReal& a, const CauchyReal& b) {
  return detail::real_compare(a, b, [](const Ball& x, const Ball& y) { return less(x, y); });
}
inline PartialBool leq(const CauchyReal& a, const CauchyReal& b) {
  return detail::real_compare(a, b, [](const Ball& x, const Ball& y) { return leq(x, y); });
}
inline PartialBool equal(const CauchyReal& a, const CauchyReal& b) {
  return detail::real_compare(a, b, [](const Ball& x, const Ball& y) { return equal(x, y); });
}

}  // namespace exactfn
