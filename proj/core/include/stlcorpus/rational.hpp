#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stlcorpus {

/// Exact non-negative-or-negative rational with a positive, reduced denominator.
///
/// Interval bounds are stored this way so that the surface form is bit-stable:
/// `2.50` and `2.5` parse to the same value and both render as `2.5`.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  /// Parses `[0-9]+(\.[0-9]+)?`. Returns nullopt on anything else or overflow.
  static std::optional<Rational> from_decimal(std::string_view text);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Shortest exact decimal (no trailing zeros). Values whose denominator has a
  /// prime factor other than 2 or 5 fall back to `p/q`, which no parser accepts.
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace stlcorpus
