#include "support.hpp"

#include <set>

#include "aispart/algorithms.hpp"
#include "aispart/errors.hpp"
#include "aispart/instances.hpp"
#include "aispart/oracles.hpp"

using namespace aispart;
using testutil::w;

namespace {

// Plain double loop over subsets; kept independent of the library scans.
Weight naive_optimum(const Instance& inst) {
  Weight best = inst.total();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.n()); ++mask) {
    Weight a = 0;
    for (std::size_t i = 0; i < inst.n(); ++i) {
      if (mask >> i & 1U) a += inst.p(i);
    }
    best = std::min(best, std::max(a, inst.total() - a));
  }
  return best;
}

std::vector<Weight> naive_local_optima(const Instance& inst) {
  std::set<Weight> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.n()); ++mask) {
    std::vector<std::uint8_t> bits(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) bits[i] = mask >> i & 1U;
    const Assignment x = Assignment::from_bits(inst, bits);
    bool local = true;
    for (std::size_t i = 0; i < inst.n() && local; ++i) {
      Assignment y = x;
      y.flip(inst, i);
      local = y.makespan() >= x.makespan();
    }
    if (local) out.insert(x.makespan());
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("dp optimum examples") {
  CHECK(dp_optimal_makespan(Instance(w({3, 2, 2, 1, 1, 1}))) == 5);
  CHECK(dp_optimal_makespan(gen_g_star(GStarParams{8, 2, {1, 4}, 1})) == 72);
  CHECK(dp_optimal_makespan(Instance(w({5}))) == 5);
  CHECK(dp_optimal_makespan(Instance(w({1, 1}))) == 1);
  CHECK(dp_optimal_makespan(Instance(w({2, 1, 1}))) == 2);
}

TEST_CASE("dp capacity guard") {
  const Instance big(w({1'000'000'000, 1'000'000'000}));
  CHECK_FALSE(dp_feasible(big));
  CHECK_THROWS_AS(dp_optimal_makespan(big), CapacityError);
  CHECK(dp_feasible(gen_uniform(50, 10000, 1)));
}

TEST_CASE("dp assignment is optimal and consistent") {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = gen_uniform(static_cast<std::int64_t>(2 + rng() % 14), 60, rng());
    const auto sol = dp_optimal_assignment(inst);
    const Weight expected = naive_optimum(inst);
    CHECK(sol.makespan == expected);
    CHECK(dp_optimal_makespan(inst) == expected);
    CHECK(makespan(inst, sol.assignment) == expected);
  }
}

TEST_CASE("brute force") {
  CHECK(brute_force_optimum(Instance(w({1, 1}))).makespan == 1);
  CHECK(brute_force_optimum(Instance(w({2, 1, 1}))).makespan == 2);
  CHECK(brute_force_optimum(Instance(w({5}))).makespan == 5);
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = gen_uniform(static_cast<std::int64_t>(4 + rng() % 13), 100, rng());
    const auto sol = brute_force_optimum(inst);
    CHECK(sol.makespan == dp_optimal_makespan(inst));
    CHECK(makespan(inst, sol.assignment) == sol.makespan);
    CHECK_FALSE(sol.assignment[0]);
  }
  CHECK_THROWS_AS(brute_force_optimum(gen_uniform(25, 10, 1)), CapacityError);
}

TEST_CASE("lpt") {
  const Instance a(w({3, 3, 2, 2, 2}));
  CHECK(lpt(a).makespan() == 7);
  CHECK(dp_optimal_makespan(a) == 6);
  CHECK(lpt(Instance(w({1, 1, 1, 1}))).makespan() == 2);
  CHECK(lpt(Instance(w({1, 1, 1, 1}))).to_string() == "0101");
  Rng rng(10);
  for (int k = 0; k < 300; ++k) {
    const Instance inst = gen_uniform(static_cast<std::int64_t>(2 + rng() % 30), 1000, rng());
    const Weight opt = dp_optimal_makespan(inst);
    const Weight got = lpt(inst).makespan();
    CHECK(got >= opt);
    CHECK(6 * got <= 7 * opt);
  }
}

TEST_CASE("local optima of the gstar reference instance") {
  const Instance g = gen_g_star(GStarParams{12, 2, {1, 4}, 1});
  const std::vector<Weight> threshold{150};
  const auto s = enumerate_local_optima(g, threshold);
  CHECK(s.distinct_makespans == std::vector<Weight>{120, 130});
  CHECK(s.count_strictly_above(150) == 0);
  CHECK(s.count_above.at(150) == 0);
  CHECK(s.count_strictly_above(120) == 1);
  CHECK(s.count_above_ratio(Rational(5, 4), 120) == 0);
  CHECK(s.count_above_ratio(Rational(1, 1), 120) == 1);
  CHECK(s.contains(130));
  CHECK_FALSE(s.contains(125));
  CHECK(enumerate_local_optima(Instance(w({1, 1}))).distinct_makespans == std::vector<Weight>{1});
  CHECK_THROWS_AS(enumerate_local_optima(gen_uniform(25, 10, 1)), CapacityError);
}

TEST_CASE("enumeration matches a naive local-optimum scan") {
  Rng rng(12);
  for (int k = 0; k < 150; ++k) {
    const Instance inst = gen_uniform(static_cast<std::int64_t>(2 + rng() % 11), k % 2 ? 8 : 200, rng());
    CHECK(enumerate_local_optima(inst).distinct_makespans == naive_local_optima(inst));
  }
}

TEST_CASE("grouped enumeration agrees with the exhaustive one") {
  std::vector<Instance> corpus;
  for (std::int64_t n = 4; n <= 18; n += 2) {
    for (std::int64_t s : {2, 4}) {
      if (s < n) corpus.push_back(gen_g_star(GStarParams{n, s, Rational(1, 4 * s), 1}));
    }
  }
  Rng rng(13);
  for (int k = 0; k < 40; ++k) corpus.push_back(gen_uniform(static_cast<std::int64_t>(3 + rng() % 14), 6, rng()));
  const std::vector<Weight> thresholds{10, 100, 130};
  for (const auto& inst : corpus) {
    CHECK(grouped_local_optima(inst, thresholds) == enumerate_local_optima(inst, thresholds));
  }
}

TEST_CASE("known local optima beyond exhaustive range") {
  const Instance g = gen_g_star(GStarParams{32, 2, {1, 4}, 1});
  const auto known = known_local_optima(g);
  REQUIRE(known);
  CHECK(known->contains(360));
  CHECK(known->contains(390));
  CHECK(known->distinct_makespans.front() == dp_optimal_makespan(g));
  CHECK(known_local_optima(gen_g_star(GStarParams{12, 2, {1, 4}, 1}))->distinct_makespans ==
        std::vector<Weight>{120, 130});
  CHECK_FALSE(known_local_optima(gen_uniform(60, 1'000'000, 3)));
}

TEST_CASE("interval progress bins") {
  const LocalOptimaSummary lo{{120, 130}, {}};
  FitnessTrace flat{{{1, 200}}, 50};
  auto p = interval_progress_stat(lo, flat);
  CHECK(p.above_top == 50);
  CHECK(p.total() == 50);

  FitnessTrace mixed{{{1, 200}, {4, 130}, {10, 125}, {12, 120}}, 20};
  p = interval_progress_stat(lo, mixed);
  CHECK(p.levels == std::vector<Weight>{130, 120});
  CHECK(p.above_top == 3);
  CHECK(p.at_level == std::vector<std::uint64_t>{6, 9});
  CHECK(p.inside == std::vector<std::uint64_t>{2});
  CHECK(p.below_bottom == 0);
  CHECK(p.total() == 20);
}

TEST_CASE("IA hyp spends little time between local optima") {
  const Instance g = gen_g_star(GStarParams{16, 2, {1, 4}, 1});
  const auto lo = enumerate_local_optima(g);
  double inside = 0;
  const int kRuns = 100;
  for (int seed = 0; seed < kRuns; ++seed) {
    StopCondition stop;
    stop.max_evaluations = 1'000'000;
    stop.target_makespan = g.total() / 2;
    FitnessTrace trace;
    const auto r = run_ia_hyp(g, stop, static_cast<std::uint64_t>(seed), record_best_so_far(trace));
    const auto p = interval_progress_stat(lo, trace);
    CHECK(p.total() == r.evaluations_used);
    for (auto v : p.inside) inside += static_cast<double>(v);
  }
  CHECK(inside / kRuns <= 20.0 * 16 * 16);
}
