#pragma once

#include <doctest.h>

#include <initializer_list>
#include <vector>

#include "aispart/weight.hpp"

namespace doctest {
template <>
struct StringMaker<aispart::Weight> {
  static String convert(aispart::Weight w) { return aispart::to_string(w).c_str(); }
};
}  // namespace doctest

namespace testutil {

// Shorthand for instances written as small integer lists.
inline std::vector<aispart::Weight> w(std::initializer_list<long long> xs) {
  return std::vector<aispart::Weight>(xs.begin(), xs.end());
}

}  // namespace testutil
