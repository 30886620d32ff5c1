#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "aispart/weight.hpp"

namespace aispart {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Weight num, Weight den);

  /// Accepts "q/r", an integer "q", or a decimal "1.25" (converted exactly).
  static Rational parse(std::string_view text);

  Weight num() const { return num_; }
  Weight den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Weight num_ = 0;
  Weight den_ = 1;
};

}  // namespace aispart
