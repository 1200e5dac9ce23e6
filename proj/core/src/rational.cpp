#include "stlcorpus/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stlcorpus {

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / (g == 0 ? 1 : g);
  den_ = denominator / (g == 0 ? 1 : g);
}

std::optional<Rational> Rational::from_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 10;
  std::int64_t value = 0;
  std::int64_t scale = 1;
  bool seen_point = false;
  bool digits_before = false;
  bool digits_after = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point || !digits_before) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    if (value > kLimit || (seen_point && scale > kLimit)) return std::nullopt;
    value = value * 10 + (c - '0');
    if (seen_point) {
      scale *= 10;
      digits_after = true;
    } else {
      digits_before = true;
    }
  }
  if (seen_point && !digits_after) return std::nullopt;
  return Rational(value, scale);
}

std::string Rational::to_string() const {
  std::int64_t rest = den_;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  const int places = std::max(twos, fives);
  if (places == 0) return std::to_string(num_);

  // Scale to a power-of-ten denominator, then place the point.
  std::int64_t scaled = num_;
  for (int i = twos; i < places; ++i) scaled *= 2;
  for (int i = fives; i < places; ++i) scaled *= 5;

  const bool negative = scaled < 0;
  std::string digits = std::to_string(negative ? -scaled : scaled);
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return negative ? "-" + digits : digits;
}

namespace {
__extension__ typedef __int128 Wide;
}  // namespace

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace stlcorpus
