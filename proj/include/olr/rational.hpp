#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace olr {

/// Exact arbitrary-precision rational. Always kept canonical.
using Rational = mpq_class;

/// Parses `n`, `-n` or `n/d`. Returns nullopt for anything else (including
/// a zero denominator).
std::optional<Rational> parse_rational(std::string_view text);

/// `p/q`, or `p` when the denominator is 1.
std::string to_string(const Rational& q);

/// A nonnegative-or-not rational extended with +infinity. Used for
/// base-type distances.
class Extended {
 public:
  Extended() = default;
  explicit Extended(Rational q) : value_(std::move(q)) {}

  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const { return value_; }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b);

  /// `inf` or the rational literal.
  std::string str() const;
  static std::optional<Extended> parse(std::string_view text);

 private:
  bool infinite_ = false;
  Rational value_{0};
};

}  // namespace olr
