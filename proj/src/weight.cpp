#include "aispart/weight.hpp"

#include <algorithm>

#include "aispart/errors.hpp"

namespace aispart {
namespace {

__extension__ using UWeight = unsigned __int128;

constexpr Weight kWeightMax = static_cast<Weight>(~UWeight{0} >> 1);
constexpr Weight kWeightMin = -kWeightMax - 1;

}  // namespace

std::string to_string(Weight value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work in unsigned so that the minimum value negates cleanly.
  UWeight magnitude = negative ? UWeight{0} - static_cast<UWeight>(value) : static_cast<UWeight>(value);
  std::string digits;
  while (magnitude > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::optional<Weight> parse_weight(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  const UWeight limit = negative ? static_cast<UWeight>(kWeightMax) + 1 : static_cast<UWeight>(kWeightMax);
  UWeight acc = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    const auto digit = static_cast<UWeight>(c - '0');
    if (acc > (limit - digit) / 10) return std::nullopt;
    acc = acc * 10 + digit;
  }
  if (negative) return acc == static_cast<UWeight>(kWeightMax) + 1 ? kWeightMin : -static_cast<Weight>(acc);
  return static_cast<Weight>(acc);
}

Weight checked_add(Weight a, Weight b, const char* what) {
  Weight out;
  if (__builtin_add_overflow(a, b, &out)) throw ValidationError(std::string("128-bit overflow in ") + what);
  return out;
}

Weight checked_mul(Weight a, Weight b, const char* what) {
  Weight out;
  if (__builtin_mul_overflow(a, b, &out)) throw ValidationError(std::string("128-bit overflow in ") + what);
  return out;
}

Weight gcd(Weight a, Weight b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Weight t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace aispart
