#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aispart/core.hpp"
#include "aispart/operators.hpp"
#include "aispart/rational.hpp"

namespace aispart {

enum class Termination { Budget, Target, Ratio };

std::string_view to_string(Termination t);

struct StopCondition {
  std::uint64_t max_evaluations = 0;
  /// Stop once the best sampled makespan is <= this value.
  std::optional<Weight> target_makespan;
  /// Stop once best <= target_ratio * optimum; needs `optimum`.
  std::optional<Rational> target_ratio;
  std::optional<Weight> optimum;

  /// Throws ValidationError.
  void validate() const;

  /// Largest integer makespan satisfying target_ratio, if set.
  std::optional<Weight> ratio_threshold() const;
  /// Makespan at or below which either target is met.
  std::optional<Weight> effective_target() const;
};

enum class EventKind { LocalOptimum, Reinitialization, Restart };

std::string_view to_string(EventKind kind);

struct StagnationEvent {
  std::uint64_t evaluation = 0;
  EventKind kind = EventKind::LocalOptimum;

  friend bool operator==(const StagnationEvent&, const StagnationEvent&) = default;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::uint64_t evaluations_used = 0;
  Weight best_makespan = 0;
  Assignment best_assignment;
  Termination terminated_by = Termination::Budget;
  std::uint64_t reinit_count = 0;
  std::vector<StagnationEvent> stagnation_log;

  // Where the evaluations went: evaluations_used is always the sum.
  std::uint64_t init_evaluations = 0;
  std::uint64_t offspring_evaluations = 0;
  std::uint64_t refill_evaluations = 0;
  std::uint64_t generations = 0;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// (1+1) IA with static hypermutation (potential n, first constructive
/// mutation). Accepts the offspring iff f(y) <= f(x).
TrialResult run_ia_hyp(const Instance& inst, const StopCondition& stop, std::uint64_t seed,
                       const EvaluationObserver& observer = {});

/// Called at the end of every completed generation of the ageing EA.
using PopulationProbe = std::function<void(std::span<const AgedIndividual>)>;

/// (mu+1) EA with static ageing. Per generation: age everyone, pick a
/// uniform parent, create an SBM offspring (age 0 if strictly better than
/// the parent, else the parent's age), drop everyone with age >= tau, drop
/// one worst individual if the population exceeds mu (uniform among ties),
/// refill with fresh random individuals of age 0.
TrialResult run_mu_ea_ageing(const Instance& inst, std::size_t mu, std::uint64_t tau, const StopCondition& stop,
                             std::uint64_t seed, const EvaluationObserver& observer = {},
                             const PopulationProbe& probe = {});

/// (1+1) EA with standard bit mutation; accepts iff f(y) <= f(x).
TrialResult run_one_one_ea(const Instance& inst, const StopCondition& stop, std::uint64_t seed,
                           const EvaluationObserver& observer = {});

/// Random local search: one uniformly chosen bit per step; accepts iff f(y) <= f(x).
TrialResult run_rls(const Instance& inst, const StopCondition& stop, std::uint64_t seed,
                    const EvaluationObserver& observer = {});

enum class RestartBase { OneOneEa, Rls };

/// Runs the base algorithm in independent segments of `restart_length`
/// evaluations (each starting from a fresh random solution) until `stop`
/// fires, and reports the best over all segments.
TrialResult run_with_restarts(RestartBase base, const Instance& inst, std::uint64_t restart_length,
                              const StopCondition& stop, std::uint64_t seed, const EvaluationObserver& observer = {});

/// ceil(e * n * ln(4 / eps)): segment length of the classical restart
/// schedule for a (1 + eps) approximation.
std::uint64_t restart_segment_length(std::size_t n, const Rational& eps);

/// ceil(n^{3/2}), the ageing threshold used throughout the experiments.
std::uint64_t default_tau(std::size_t n);

}  // namespace aispart
