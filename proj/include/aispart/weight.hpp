#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace aispart {

// Processing times, loads and makespans. 128 bits so that generated
// instances with large common denominators stay exact.
__extension__ using Weight = __int128;

std::string to_string(Weight value);

/// Parses an optionally signed decimal integer. Rejects empty input,
/// stray characters and values outside the 128-bit range.
std::optional<Weight> parse_weight(std::string_view text);

/// Overflow-checked arithmetic; throws ValidationError naming `what`.
Weight checked_add(Weight a, Weight b, const char* what);
Weight checked_mul(Weight a, Weight b, const char* what);

Weight gcd(Weight a, Weight b);

/// Nearest double; exact for magnitudes below 2^53.
inline double to_double(Weight value) { return static_cast<double>(value); }

}  // namespace aispart
