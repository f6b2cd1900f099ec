#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exactfn {

/// Three-valued truth for comparisons of overlapping enclosures.
enum class Kleenean { False, True, Unknown };

inline Kleenean kleenean(bool b) { return b ? Kleenean::True : Kleenean::False; }
inline bool is_true(Kleenean k) { return k == Kleenean::True; }
inline bool is_false(Kleenean k) { return k == Kleenean::False; }
inline bool is_unknown(Kleenean k) { return k == Kleenean::Unknown; }
/// "surely" view: the relation certainly holds.
inline bool surely(Kleenean k) { return k == Kleenean::True; }
/// "maybe" view: the relation cannot be excluded.
inline bool maybe(Kleenean k) { return k != Kleenean::False; }

inline Kleenean operator!(Kleenean k) {
  switch (k) {
    case Kleenean::True: return Kleenean::False;
    case Kleenean::False: return Kleenean::True;
    default: return Kleenean::Unknown;
  }
}

enum class Severity { Certain, Potential };

enum class ErrorKind {
  DivisionByZero,
  OutOfDomain,
  OutOfRange,
  Numeric,       // escalation/iteration caps, internal inconsistencies
  Unsupported,   // operation not available for this representation
};

struct NumError {
  Severity severity;
  ErrorKind kind;
  std::string detail;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "division by 0";
    case ErrorKind::OutOfDomain: return "out of domain";
    case ErrorKind::OutOfRange: return "out of range";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Unsupported: return "unsupported operation";
  }
  return "?";
}

/**
 * @brief Error-collecting result: a value plus certain/potential error records.
 *
 * A value is present iff no certain error was recorded. Potential errors may
 * coexist with a value when the value is still a valid conservative enclosure.
 */
template <typename T>
class Errored {
 public:
  Errored(T v) : value_(std::move(v)) {}
  Errored() = default;

  static Errored certain(ErrorKind kind, std::string detail = "") {
    Errored e;
    e.errors_.push_back(NumError{Severity::Certain, kind, std::move(detail)});
    return e;
  }
  static Errored potential(ErrorKind kind, std::string detail = "") {
    Errored e;
    e.errors_.push_back(NumError{Severity::Potential, kind, std::move(detail)});
    return e;
  }
  static Errored potential_with(T v, ErrorKind kind, std::string detail = "") {
    Errored e(std::move(v));
    e.errors_.push_back(NumError{Severity::Potential, kind, std::move(detail)});
    return e;
  }

  bool has_value() const { return value_.has_value(); }
  explicit operator bool() const { return has_value(); }
  const T& value() const { return *value_; }
  T& value() { return *value_; }

  const std::vector<NumError>& errors() const { return errors_; }
  bool has_certain_error() const {
    for (const auto& e : errors_)
      if (e.severity == Severity::Certain) return true;
    return false;
  }
  bool has_error() const { return !errors_.empty(); }
  bool has_error(ErrorKind k) const {
    for (const auto& e : errors_)
      if (e.kind == k) return true;
    return false;
  }

  /// Copy the other result's error records onto this one (propagation).
  template <typename U>
  void absorb_errors(const Errored<U>& other) {
    for (const auto& e : other.errors()) errors_.push_back(e);
    if (has_certain_error()) value_.reset();
  }

  void add_error(Severity s, ErrorKind k, std::string detail = "") {
    errors_.push_back(NumError{s, k, std::move(detail)});
    if (s == Severity::Certain) value_.reset();
  }

  std::string describe() const {
    if (errors_.empty()) return "ok";
    std::string s;
    for (const auto& e : errors_) {
      if (!s.empty()) s += "; ";
      s += (e.severity == Severity::Certain ? "ERROR," : "POTENTIAL ERROR,");
      s += to_string(e.kind);
      if (!e.detail.empty()) s += " (" + e.detail + ")";
    }
    return s;
  }

 private:
  std::optional<T> value_;
  std::vector<NumError> errors_;
};

/// Lift a binary operation over two error-carrying operands.
template <typename T, typename F>
Errored<T> lift2(const Errored<T>& a, const Errored<T>& b, F&& op) {
  Errored<T> out;
  if (a.has_value() && b.has_value()) out = Errored<T>(op(a.value(), b.value()));
  out.absorb_errors(a);
  out.absorb_errors(b);
  return out;
}

template <typename T, typename F>
Errored<T> lift1(const Errored<T>& a, F&& op) {
  Errored<T> out;
  if (a.has_value()) out = Errored<T>(op(a.value()));
  out.absorb_errors(a);
  return out;
}

}  // namespace exactfn
