#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aispart/core.hpp"

namespace aispart {

/// What one hypermutation did: the drawn flip order, the makespan after each
/// executed flip, and where it stopped.
struct HypermutationTrace {
  std::vector<std::size_t> flip_order;
  std::vector<Weight> fitness_after;
  /// Number of flips executed. Equals n unless a constructive flip (or the
  /// evaluation budget) ended the walk early.
  std::size_t stopped_at = 0;
  bool constructive = false;
};

struct HypermutationResult {
  Assignment offspring;
  HypermutationTrace trace;
};

/// Static hypermutation with mutation potential n and stop at first
/// constructive mutation. Flips bits of a copy of x in a uniformly random
/// order, charging one evaluation per flip, and stops right after the first
/// flip that is strictly better than x. Stops early as well when `counter`
/// signals its budget or target. Acceptance is left to the caller.
HypermutationResult hypermutate_fcm(const Instance& inst, const Assignment& x, Rng& rng, EvaluationCounter& counter);

/// Uniform random permutation of {0, ..., n-1} (Fisher-Yates).
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

using TrajectoryVisitor =
    std::function<void(std::size_t step, std::size_t flipped, std::span<const std::uint8_t> current)>;

/// Runs one hypermutation without fitness or early stop, calling `visit`
/// after every flip (steps are 1-based). Never charges evaluations.
void walk_hypermutation(std::span<const std::uint8_t> x, Rng& rng, const TrajectoryVisitor& visit);

/// The n intermediate strings of one full hypermutation of x.
std::vector<std::vector<std::uint8_t>> hypermutation_full_trajectory(std::span<const std::uint8_t> x, Rng& rng);

/// Positions flipped by standard bit mutation (each independently with
/// probability 1/n), in increasing order. Uses geometric gap sampling.
std::vector<std::size_t> sbm_positions(std::size_t n, Rng& rng);
/// Same draw, written into `out` (cleared first) to avoid reallocation.
void sbm_positions(std::size_t n, Rng& rng, std::vector<std::size_t>& out);

/// Standard bit mutation of x. The caller charges the evaluation.
Assignment sbm(const Instance& inst, const Assignment& x, Rng& rng);

/// Flips one uniformly chosen bit of x.
Assignment one_bit_flip(const Instance& inst, const Assignment& x, Rng& rng);

struct AgedIndividual {
  Assignment x;
  Weight fitness = 0;
  std::uint64_t age = 0;
};

}  // namespace aispart
