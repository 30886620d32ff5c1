#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aispart/core.hpp"
#include "aispart/rational.hpp"

namespace aispart {

/// Largest n * W the subset-sum table may have.
inline constexpr std::uint64_t kDpCellLimit = 1'000'000'000ULL;
/// Largest n the exhaustive oracles accept.
inline constexpr std::size_t kEnumerationLimit = 24;

bool dp_feasible(const Instance& inst);

/// Exact optimum via subset-sum reachability over loads 0..floor(W/2).
/// Throws CapacityError when n * W exceeds kDpCellLimit.
Weight dp_optimal_makespan(const Instance& inst);

struct OptimalSolution {
  Weight makespan = 0;
  Assignment assignment;
};

/// Optimum plus one optimal assignment, recovered by backtracking over the
/// stored reachability rows.
OptimalSolution dp_optimal_assignment(const Instance& inst);

/// Exhaustive scan of the 2^(n-1) assignments with job 0 on M1.
/// Throws CapacityError for n > kEnumerationLimit.
OptimalSolution brute_force_optimum(const Instance& inst);

/// Longest processing time first: each job (in non-increasing order) goes
/// to the currently emptier machine, M1 on ties.
Assignment lpt(const Instance& inst);

struct LocalOptimaSummary {
  /// Distinct makespans of all local optima, ascending.
  std::vector<Weight> distinct_makespans;
  /// threshold -> number of distinct locally optimal makespans strictly above it.
  std::map<Weight, std::size_t> count_above;

  std::size_t count_strictly_above(Weight threshold) const;
  /// Number of distinct locally optimal makespans y with y > ratio * optimum.
  std::size_t count_above_ratio(const Rational& ratio, Weight optimum) const;
  bool contains(Weight makespan) const;

  friend bool operator==(const LocalOptimaSummary&, const LocalOptimaSummary&) = default;
};

/// Applies the single-flip local optimality test to every assignment with
/// job 0 on M1. Throws CapacityError for n > kEnumerationLimit.
LocalOptimaSummary enumerate_local_optima(const Instance& inst, std::span<const Weight> thresholds = {});

/// Same summary computed over load classes: jobs with equal processing time
/// are interchangeable, so only the number of jobs of each size on M1
/// matters. Exact for any instance; cheap when there are few distinct sizes
/// (gstar has two). Throws CapacityError when the class product exceeds
/// `class_limit`.
LocalOptimaSummary grouped_local_optima(const Instance& inst, std::span<const Weight> thresholds = {},
                                        std::uint64_t class_limit = 10'000'000ULL);

/// Exhaustive enumeration when n <= kEnumerationLimit, else the grouped
/// computation when affordable, else nothing.
std::optional<LocalOptimaSummary> known_local_optima(const Instance& inst);

/// Best-so-far makespan as a step function of the evaluation index:
/// `changes[k] = (e, f)` means the best equals f from evaluation e on.
struct FitnessTrace {
  std::vector<std::pair<std::uint64_t, Weight>> changes;
  std::uint64_t evaluations = 0;
};

/// Observer that appends to `trace`; the trace must outlive the run.
EvaluationObserver record_best_so_far(FitnessTrace& trace);

/// Evaluations spent by a run in each band between consecutive locally
/// optimal makespans l_1 > l_2 > ... > l_L.
struct IntervalProgress {
  std::vector<Weight> levels;           // l_1 > ... > l_L
  std::uint64_t above_top = 0;          // f > l_1
  std::vector<std::uint64_t> at_level;  // f == l_i
  std::vector<std::uint64_t> inside;    // l_{i+1} < f < l_i, size L-1
  std::uint64_t below_bottom = 0;       // f < l_L

  std::uint64_t total() const;
};

IntervalProgress interval_progress_stat(const LocalOptimaSummary& optima, const FitnessTrace& trace);

}  // namespace aispart
