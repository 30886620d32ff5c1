#include "aispart/rational.hpp"

#include "aispart/errors.hpp"

namespace aispart {

Rational::Rational(Weight num, Weight den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Weight g = gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&] { return ValidationError("expected a rational q/r, got '" + std::string(text) + "'"); };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_weight(text.substr(0, slash));
    const auto den = parse_weight(text.substr(slash + 1));
    if (!num || !den || *den == 0) throw bad();
    return Rational(*num, *den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 30 || frac.find_first_of("+-") != std::string_view::npos) throw bad();
    const auto digits = parse_weight(std::string(whole) + std::string(frac));
    if (!digits || (whole.empty() && frac.empty())) throw bad();
    Weight den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den = checked_mul(den, 10, "decimal denominator");
    return Rational(*digits, den);
  }
  const auto value = parse_weight(text);
  if (!value) throw bad();
  return Rational(*value, 1);
}

std::string Rational::to_string() const {
  return aispart::to_string(num_) + "/" + aispart::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(checked_add(checked_mul(a.num_, b.den_, "rational add"), checked_mul(b.num_, a.den_, "rational add"),
                              "rational add"),
                  checked_mul(a.den_, b.den_, "rational add"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  const Weight g1 = gcd(a.num_, b.den_);
  const Weight g2 = gcd(b.num_, a.den_);
  const Weight n1 = g1 == 0 ? a.num_ : a.num_ / g1;
  const Weight d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const Weight n2 = g2 == 0 ? b.num_ : b.num_ / g2;
  const Weight d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return Rational(checked_mul(n1, n2, "rational mul"), checked_mul(d1, d2, "rational mul"));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw ValidationError("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Weight lhs = checked_mul(a.num_, b.den_, "rational compare");
  const Weight rhs = checked_mul(b.num_, a.den_, "rational compare");
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace aispart
