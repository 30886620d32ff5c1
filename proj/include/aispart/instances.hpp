#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "aispart/core.hpp"
#include "aispart/rational.hpp"

namespace aispart {

/// Parameters of the generalised worst-case family: n jobs, s equal large
/// jobs and n - s equal small jobs, perturbed by eps.
struct GStarParams {
  std::int64_t n = 0;
  std::int64_t s = 2;
  Rational eps{1, 4};
  Weight scale = 1;

  /// Throws ValidationError naming the violated condition.
  void validate() const;
};

/// Exact integer instance proportional to the family's rational times.
/// The total equals the common denominator times `scale`.
Instance gen_g_star(const GStarParams& params);

/// The two-large-job instance; identical to gen_g_star with s = 2.
Instance gen_p_star(std::int64_t n, const Rational& eps, Weight scale = 1);

/// n times drawn uniformly from [1, max_p], sorted non-increasing.
Instance gen_uniform(std::int64_t n, std::int64_t max_p, std::uint64_t seed);

// Text format:
//   partition v1
//   n=<int>
//   meta=<family>;s=<int>;eps=<q>/<r>;scale=<int>     (optional)
//   <n lines of positive decimal integers>
void write_instance(const Instance& inst, std::ostream& out);
void write_instance(const Instance& inst, const std::filesystem::path& path);

/// Throws ParseError with the offending line number. Unsorted times are
/// accepted and sorted; meta().resorted records it.
Instance read_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);

}  // namespace aispart
