#include "aispart/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "aispart/errors.hpp"
#include "aispart/instances.hpp"
#include "aispart/operators.hpp"
#include "aispart/oracles.hpp"

namespace aispart {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

CheckResult check_dp_vs_brute(std::uint64_t seed) {
  const auto start = Clock::now();
  Rng rng = make_rng(seed);
  std::size_t agree = 0;
  std::string first_mismatch;
  constexpr int kInstances = 200;
  for (int k = 0; k < kInstances; ++k) {
    const auto n = static_cast<std::int64_t>(4 + uniform_index(rng, 13));
    const Instance inst = gen_uniform(n, 100, rng());
    const Weight dp = dp_optimal_makespan(inst);
    const Weight brute = brute_force_optimum(inst).makespan;
    if (dp == brute) {
      ++agree;
    } else if (first_mismatch.empty()) {
      first_mismatch = " first_mismatch=instance" + std::to_string(k) + "(dp=" + to_string(dp) + ",brute=" +
                       to_string(brute) + ")";
    }
  }
  const double elapsed = seconds_since(start);
  CheckResult r{"C1", "dp_optimal_makespan == brute_force_optimum on 200 uniform instances", false, ""};
  r.passed = agree == kInstances && elapsed < 10.0;
  r.measured = "agree=" + std::to_string(agree) + "/" + std::to_string(kInstances) + fmt(" runtime=%.2fs", elapsed) +
               " (limit 10s)" + first_mismatch;
  return r;
}

struct GStarCase {
  std::int64_t n;
  std::int64_t s;
  Rational eps;
  Weight scale;
};

CheckResult check_generator_identities() {
  const std::vector<GStarCase> cases = {
      {4, 2, {1, 4}, 1},     {8, 2, {1, 4}, 1},      {12, 2, {1, 4}, 1},    {16, 2, {1, 4}, 1},
      {32, 2, {1, 4}, 1},    {64, 2, {1, 4}, 1},     {8, 2, {1, 10}, 1},    {10, 2, {2, 7}, 1},
      {100, 2, {1, 100}, 3}, {1000, 2, {3, 11}, 1},  {6, 4, {1, 8}, 1},     {12, 4, {1, 9}, 1},
      {20, 4, {2, 15}, 5},   {40, 6, {1, 12}, 1},    {50, 6, {1, 20}, 2},   {64, 8, {1, 16}, 1},
      {22, 10, {1, 20}, 1},  {30, 2, {1, 1000}, 7},  {200, 4, {1, 8}, 1},   {14, 2, {1, 4}, 11},
  };
  std::size_t ok = 0;
  std::size_t pstar_checked = 0;
  std::string failures;
  for (const auto& c : cases) {
    const Instance inst = gen_g_star(GStarParams{c.n, c.s, c.eps, c.scale});
    // Exact rationals of the family, computed independently of the generator's integer scaling.
    const Rational large = Rational(1, 2 * c.s - 1) - c.eps / Rational(2 * c.s, 1);
    const Rational small = Rational(c.s - 1, c.n - c.s) * (Rational(1, 2 * c.s - 1) + c.eps / Rational(2 * (c.s - 1), 1));
    const Weight denominator = large.den() / gcd(large.den(), small.den()) * small.den();
    bool good = inst.total() == denominator * c.scale;
    // Small jobs can outweigh large ones when n - s is tiny, so match by value rather than position.
    std::int64_t large_count = 0;
    std::int64_t small_count = 0;
    for (std::size_t i = 0; i < inst.n(); ++i) {
      const Rational share(inst.p(i), inst.total());
      if (share == large) ++large_count;
      else if (share == small) ++small_count;
    }
    if (large == small) good = good && large_count == c.n;
    else good = good && large_count == c.s && small_count == c.n - c.s;
    if (c.s == 2) {
      ++pstar_checked;
      good = good && gen_p_star(c.n, c.eps, c.scale) == inst;
    }
    if (good) {
      ++ok;
    } else {
      failures += " fail(n=" + std::to_string(c.n) + ",s=" + std::to_string(c.s) + ",eps=" + c.eps.to_string() + ")";
    }
  }
  CheckResult r{"C2", "gstar normalisation and gstar(s=2) == pstar", ok == cases.size(), ""};
  r.measured = "settings_ok=" + std::to_string(ok) + "/" + std::to_string(cases.size()) +
               " pstar_identities=" + std::to_string(pstar_checked) + failures;
  return r;
}

CheckResult check_local_optima_structure(std::uint64_t seed) {
  const auto start = Clock::now();
  CheckResult r{"C3", "gstar(12,2,1/4) local optima {120,130}; poor local optima <= 2^(2/eps)", false, ""};

  const Instance reference = gen_g_star(GStarParams{12, 2, {1, 4}, 1});
  const auto summary = enumerate_local_optima(reference);
  const bool exact = summary.distinct_makespans == std::vector<Weight>{120, 130};
  std::string got;
  for (Weight w : summary.distinct_makespans) got += (got.empty() ? "" : ",") + to_string(w);

  std::vector<Instance> corpus;
  for (std::int64_t n = 4; n <= 20; n += 2) {
    for (std::int64_t s : {2, 4, 6}) {
      if (s >= n) continue;
      for (const Rational& eps : {Rational(1, 4 * s), Rational(1, 2 * s)}) {
        if (eps >= Rational(1, 2 * s - 1)) continue;
        corpus.push_back(gen_g_star(GStarParams{n, s, eps, 1}));
      }
    }
  }
  Rng rng = make_rng(seed);
  for (int k = 0; k < 20; ++k) {
    const auto n = static_cast<std::int64_t>(4 + uniform_index(rng, 17));
    corpus.push_back(gen_uniform(n, k % 2 == 0 ? 10 : 1000, rng()));
  }

  const std::vector<Rational> approx_eps = {{1, 8}, {1, 4}, {1, 2}, {1, 1}};
  std::size_t bound_ok = 0;
  std::size_t bound_checks = 0;
  std::size_t max_count = 0;
  for (const auto& inst : corpus) {
    const auto optima = enumerate_local_optima(inst);
    const Weight optimum = optima.distinct_makespans.front();
    for (const auto& eps : approx_eps) {
      const std::size_t count = optima.count_above_ratio(Rational(1, 1) + eps, optimum);
      const double bound = std::pow(2.0, 2.0 / eps.to_double());
      ++bound_checks;
      max_count = std::max(max_count, count);
      if (static_cast<double>(count) <= bound) ++bound_ok;
    }
  }
  const double elapsed = seconds_since(start);
  r.passed = exact && bound_ok == bound_checks && elapsed < 60.0;
  r.measured = "distinct={" + got + "} bound_ok=" + std::to_string(bound_ok) + "/" + std::to_string(bound_checks) +
               " instances=" + std::to_string(corpus.size()) + " max_poor_count=" + std::to_string(max_count) +
               fmt(" runtime=%.2fs", elapsed) + " (limit 60s)";
  return r;
}

CheckResult check_trajectories(std::uint64_t seed) {
  const auto start = Clock::now();
  CheckResult r{"C4", "hypermutation trajectory statistics", false, ""};
  Rng rng = make_rng(seed);

  // (a) step 4 of n = 8 is uniform over the 70 strings at distance 4.
  constexpr std::size_t kSamples = 100'000;
  const std::vector<std::uint8_t> zero8(8, 0);
  std::map<unsigned, std::size_t> counts;
  for (std::size_t t = 0; t < kSamples; ++t) {
    walk_hypermutation(zero8, rng, [&](std::size_t step, std::size_t, std::span<const std::uint8_t> cur) {
      if (step != 4) return;
      unsigned code = 0;
      for (std::size_t j = 0; j < cur.size(); ++j) code |= static_cast<unsigned>(cur[j]) << j;
      ++counts[code];
    });
  }
  double chi2 = 0;
  const double expected = static_cast<double>(kSamples) / 70.0;
  for (unsigned code = 0; code < 256; ++code) {
    if (std::popcount(code) != 4) continue;
    const double observed = counts.count(code) ? static_cast<double>(counts[code]) : 0.0;
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  const bool only_distance4 = counts.size() <= 70;
  const double p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(69), chi2));
  const bool a_ok = only_distance4 && p_value >= 1e-3;

  // (b) weighted sum at step n/2 from 0^n has mean (1/2) * sum of weights.
  constexpr std::size_t kN = 100;
  std::vector<double> weights(kN, 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double weight_sum = 0;
  for (auto& w : weights) {
    if (unit(rng) < 0.75) w = unit(rng);  // positions outside S keep weight 0
    weight_sum += w;
  }
  const std::vector<std::uint8_t> zeros(kN, 0);
  double acc = 0;
  for (std::size_t t = 0; t < kSamples; ++t) {
    walk_hypermutation(zeros, rng, [&](std::size_t step, std::size_t, std::span<const std::uint8_t> cur) {
      if (step != kN / 2) return;
      double f = 0;
      for (std::size_t j = 0; j < kN; ++j) f += cur[j] * weights[j];
      acc += f;
    });
  }
  const double mean = acc / static_cast<double>(kSamples);
  const double target = 0.5 * weight_sum;
  const double rel_err = std::abs(mean - target) / target;
  const bool b_ok = rel_err <= 0.01;

  // (c) from 750 ones out of 1000, exactly 500 ones occurs within steps [375, 625].
  constexpr std::size_t kLong = 1000;
  constexpr std::size_t kTrajectories = 10'000;
  std::vector<std::uint8_t> start_string(kLong, 0);
  for (std::size_t j = 0; j < 750; ++j) start_string[j] = 1;
  std::shuffle(start_string.begin(), start_string.end(), rng);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < kTrajectories; ++t) {
    std::size_t ones = 750;
    bool hit = false;
    walk_hypermutation(start_string, rng, [&](std::size_t step, std::size_t flipped, std::span<const std::uint8_t> cur) {
      ones = cur[flipped] ? ones + 1 : ones - 1;
      if (ones == kLong / 2 && step >= 375 && step <= 625) hit = true;
    });
    if (hit) ++hits;
  }
  const double hit_rate = static_cast<double>(hits) / static_cast<double>(kTrajectories);
  const bool c_ok = hit_rate >= 0.95;

  const double elapsed = seconds_since(start);
  r.passed = a_ok && b_ok && c_ok && elapsed < 120.0;
  r.measured = std::string("(a) chi2=") + fmt("%.2f", chi2) + fmt(" p=%.4g", p_value) + (a_ok ? " ok" : " FAIL") +
               " (b) mean=" + fmt("%.5f", mean) + " expected=" + fmt("%.5f", target) + fmt(" rel_err=%.5f", rel_err) +
               (b_ok ? " ok" : " FAIL") + " (c) hit_rate=" + fmt("%.4f", hit_rate) + (c_ok ? " ok" : " FAIL") +
               fmt(" runtime=%.2fs", elapsed) + " (limit 120s)";
  return r;
}

}  // namespace

std::vector<CheckResult> verify_oracles(std::uint64_t seed) {
  return {check_dp_vs_brute(derive_seed(seed, 1)), check_generator_identities()};
}

std::vector<CheckResult> verify_properties(std::uint64_t seed) {
  return {check_local_optima_structure(derive_seed(seed, 3))};
}

std::vector<CheckResult> verify_trajectories(std::uint64_t seed) { return {check_trajectories(derive_seed(seed, 4))}; }

std::vector<CheckResult> run_verify_suite(std::string_view suite, std::uint64_t seed) {
  if (suite == "oracles") return verify_oracles(seed);
  if (suite == "properties") return verify_properties(seed);
  if (suite == "trajectories") return verify_trajectories(seed);
  throw ValidationError("unknown verify suite '" + std::string(suite) + "' (expected properties, trajectories or oracles)");
}

std::string format_check(const CheckResult& check) {
  return std::string(check.passed ? "[PASS] " : "[FAIL] ") + check.id + " " + check.name + " :: " + check.measured;
}

}  // namespace aispart
