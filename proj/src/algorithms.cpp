#include "aispart/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aispart/errors.hpp"

namespace aispart {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Budget: return "budget";
    case Termination::Target: return "target";
    case Termination::Ratio: return "ratio";
  }
  return "unknown";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::LocalOptimum: return "local_optimum";
    case EventKind::Reinitialization: return "reinitialization";
    case EventKind::Restart: return "restart";
  }
  return "unknown";
}

void StopCondition::validate() const {
  if (max_evaluations < 1) throw ValidationError("evaluation budget must be at least 1");
  if (target_ratio) {
    if (!optimum) throw ValidationError("a target ratio needs a known optimum");
    if (*target_ratio < Rational(1, 1)) throw ValidationError("target ratio must be >= 1, got " + target_ratio->to_string());
  }
  if (optimum && *optimum < 1) throw ValidationError("optimum must be positive");
}

std::optional<Weight> StopCondition::ratio_threshold() const {
  if (!target_ratio || !optimum) return std::nullopt;
  return checked_mul(target_ratio->num(), *optimum, "ratio target") / target_ratio->den();
}

std::optional<Weight> StopCondition::effective_target() const {
  const auto ratio = ratio_threshold();
  if (target_makespan && ratio) return std::max(*target_makespan, *ratio);
  return target_makespan ? target_makespan : ratio;
}

namespace {

// Logs an event whenever the tracked solution turns into a local optimum.
class LocalOptimumWatch {
 public:
  void observe(const Instance& inst, const Assignment& x, std::uint64_t evaluation, TrialResult& result) {
    const bool now = is_local_optimum(inst, x);
    if (now && !at_optimum_) result.stagnation_log.push_back({evaluation, EventKind::LocalOptimum});
    at_optimum_ = now;
  }
  void reset() { at_optimum_ = false; }

 private:
  bool at_optimum_ = false;
};

void finish(const EvaluationCounter& counter, const StopCondition& stop, TrialResult& result) {
  result.evaluations_used = counter.used();
  result.best_makespan = counter.best();
  result.best_assignment = counter.best_assignment();
  const auto ratio = stop.ratio_threshold();
  if (stop.target_makespan && result.best_makespan <= *stop.target_makespan) {
    result.terminated_by = Termination::Target;
  } else if (ratio && result.best_makespan <= *ratio) {
    result.terminated_by = Termination::Ratio;
  } else {
    result.terminated_by = Termination::Budget;
  }
}

EvaluationCounter make_counter(const StopCondition& stop, const EvaluationObserver& observer) {
  stop.validate();
  return EvaluationCounter(stop.max_evaluations, stop.effective_target(), observer);
}

// Shared driver for the (1+1) EA and RLS, optionally cut into restart
// segments. A single unlimited segment is the plain algorithm.
TrialResult run_elitist_segments(RestartBase base, const Instance& inst, std::uint64_t segment_length,
                                 const StopCondition& stop, std::uint64_t seed, const EvaluationObserver& observer) {
  if (segment_length < 1) throw ValidationError("restart length must be at least 1");
  Rng rng = make_rng(seed);
  EvaluationCounter counter = make_counter(stop, observer);
  TrialResult result;
  result.seed = seed;
  std::vector<std::size_t> flips;
  LocalOptimumWatch watch;

  bool first_segment = true;
  while (!counter.should_stop()) {
    if (!first_segment) result.stagnation_log.push_back({counter.used(), EventKind::Restart});
    first_segment = false;
    const std::uint64_t segment_start = counter.used();
    const auto segment_done = [&] { return counter.used() - segment_start >= segment_length; };

    Assignment x = Assignment::random(inst, rng);
    Weight fx = counter.evaluate(x);
    ++result.init_evaluations;
    watch.reset();
    watch.observe(inst, x, counter.used(), result);

    while (!counter.should_stop() && !segment_done()) {
      if (base == RestartBase::OneOneEa) {
        sbm_positions(inst.n(), rng, flips);
      } else {
        flips.assign(1, uniform_index(rng, inst.n()));
      }
      for (std::size_t i : flips) x.flip(inst, i);
      const Weight fy = counter.evaluate(x);
      ++result.offspring_evaluations;
      ++result.generations;
      if (fy <= fx) {
        fx = fy;
        if (!flips.empty()) watch.observe(inst, x, counter.used(), result);
      } else {
        for (std::size_t i : flips) x.flip(inst, i);
      }
    }
  }
  finish(counter, stop, result);
  return result;
}

}  // namespace

TrialResult run_ia_hyp(const Instance& inst, const StopCondition& stop, std::uint64_t seed,
                       const EvaluationObserver& observer) {
  Rng rng = make_rng(seed);
  EvaluationCounter counter = make_counter(stop, observer);
  TrialResult result;
  result.seed = seed;
  LocalOptimumWatch watch;

  Assignment x = Assignment::random(inst, rng);
  Weight fx = counter.evaluate(x);
  result.init_evaluations = 1;
  watch.observe(inst, x, counter.used(), result);

  while (!counter.should_stop()) {
    const std::uint64_t before = counter.used();
    auto mutated = hypermutate_fcm(inst, x, rng, counter);
    result.offspring_evaluations += counter.used() - before;
    ++result.generations;
    const Weight fy = mutated.offspring.makespan();
    if (fy <= fx) {
      x = std::move(mutated.offspring);
      fx = fy;
      watch.observe(inst, x, counter.used(), result);
    }
  }
  finish(counter, stop, result);
  return result;
}

TrialResult run_mu_ea_ageing(const Instance& inst, std::size_t mu, std::uint64_t tau, const StopCondition& stop,
                             std::uint64_t seed, const EvaluationObserver& observer, const PopulationProbe& probe) {
  if (mu < 1) throw ValidationError("population size mu must be at least 1");
  if (tau < 1) throw ValidationError("ageing threshold tau must be at least 1");
  Rng rng = make_rng(seed);
  EvaluationCounter counter = make_counter(stop, observer);
  TrialResult result;
  result.seed = seed;

  std::vector<AgedIndividual> population;
  population.reserve(mu + 1);
  const auto fresh_individual = [&] {
    AgedIndividual ind{Assignment::random(inst, rng), 0, 0};
    ind.fitness = counter.evaluate(ind.x);
    return ind;
  };

  for (std::size_t k = 0; k < mu && !counter.should_stop(); ++k) {
    population.push_back(fresh_individual());
    ++result.init_evaluations;
  }

  bool best_was_local_optimum = false;
  std::optional<Weight> last_best;
  std::vector<std::size_t> worst;

  while (!counter.should_stop()) {
    ++result.generations;
    for (auto& ind : population) ++ind.age;

    const AgedIndividual& parent = population[uniform_index(rng, population.size())];
    AgedIndividual child{sbm(inst, parent.x, rng), 0, 0};
    child.fitness = counter.evaluate(child.x);
    ++result.offspring_evaluations;
    child.age = child.fitness < parent.fitness ? 0 : parent.age;
    population.push_back(std::move(child));
    if (counter.should_stop()) break;

    std::erase_if(population, [tau](const AgedIndividual& ind) { return ind.age >= tau; });
    if (population.empty()) {
      ++result.reinit_count;
      result.stagnation_log.push_back({counter.used(), EventKind::Reinitialization});
      best_was_local_optimum = false;
      last_best.reset();
    }

    if (population.size() > mu) {
      Weight highest = population.front().fitness;
      for (const auto& ind : population) highest = std::max(highest, ind.fitness);
      worst.clear();
      for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i].fitness == highest) worst.push_back(i);
      }
      const std::size_t victim = worst.size() == 1 ? worst.front() : worst[uniform_index(rng, worst.size())];
      population.erase(population.begin() + static_cast<std::ptrdiff_t>(victim));
    }

    while (population.size() < mu && !counter.should_stop()) {
      population.push_back(fresh_individual());
      ++result.refill_evaluations;
    }
    if (population.size() < mu) break;

    const auto best = std::min_element(population.begin(), population.end(),
                                       [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
    if (!last_best || best->fitness != *last_best) {
      last_best = best->fitness;
      const bool now = is_local_optimum(inst, best->x);
      if (now && !best_was_local_optimum) {
        result.stagnation_log.push_back({counter.used(), EventKind::LocalOptimum});
      }
      best_was_local_optimum = now;
    }
    if (probe) probe(population);
  }
  finish(counter, stop, result);
  return result;
}

TrialResult run_one_one_ea(const Instance& inst, const StopCondition& stop, std::uint64_t seed,
                           const EvaluationObserver& observer) {
  return run_elitist_segments(RestartBase::OneOneEa, inst, EvaluationCounter::kUnlimited, stop, seed, observer);
}

TrialResult run_rls(const Instance& inst, const StopCondition& stop, std::uint64_t seed,
                    const EvaluationObserver& observer) {
  return run_elitist_segments(RestartBase::Rls, inst, EvaluationCounter::kUnlimited, stop, seed, observer);
}

TrialResult run_with_restarts(RestartBase base, const Instance& inst, std::uint64_t restart_length,
                              const StopCondition& stop, std::uint64_t seed, const EvaluationObserver& observer) {
  return run_elitist_segments(base, inst, restart_length, stop, seed, observer);
}

std::uint64_t restart_segment_length(std::size_t n, const Rational& eps) {
  if (eps <= Rational(0, 1)) throw ValidationError("restart schedule needs eps > 0");
  const double length = std::numbers::e * static_cast<double>(n) * std::log(4.0 / eps.to_double());
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(length)));
}

std::uint64_t default_tau(std::size_t n) {
  // Integer search avoids floating point at perfect squares.
  const auto n3 = static_cast<std::uint64_t>(n) * n * n;
  auto t = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n3)));
  while (t * t < n3) ++t;
  while (t > 0 && (t - 1) * (t - 1) >= n3) --t;
  return t;
}

}  // namespace aispart
