#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aispart {

struct CheckResult {
  std::string id;    // e.g. "C1"
  std::string name;
  bool passed = false;
  std::string measured;
};

/// DP vs brute force on random instances; generator identities.
std::vector<CheckResult> verify_oracles(std::uint64_t seed);
/// Local-optimum structure of the gstar family and the approximation bound
/// on the number of poor locally optimal makespans.
std::vector<CheckResult> verify_properties(std::uint64_t seed);
/// Statistics of full hypermutation trajectories.
std::vector<CheckResult> verify_trajectories(std::uint64_t seed);

/// Dispatches "oracles", "properties" or "trajectories"; throws
/// ValidationError for anything else.
std::vector<CheckResult> run_verify_suite(std::string_view suite, std::uint64_t seed);

std::string format_check(const CheckResult& check);

}  // namespace aispart
