#include "aispart/operators.hpp"

#include <algorithm>
#include <numeric>

namespace aispart {

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

HypermutationResult hypermutate_fcm(const Instance& inst, const Assignment& x, Rng& rng, EvaluationCounter& counter) {
  HypermutationResult result{x, {}};
  auto& trace = result.trace;
  trace.flip_order = random_permutation(inst.n(), rng);
  trace.fitness_after.reserve(inst.n());
  const Weight parent = x.makespan();
  for (std::size_t index : trace.flip_order) {
    result.offspring.flip(inst, index);
    const Weight f = counter.evaluate(result.offspring);
    trace.fitness_after.push_back(f);
    ++trace.stopped_at;
    if (f < parent) {
      trace.constructive = true;
      break;
    }
    if (counter.should_stop()) break;
  }
  return result;
}

void walk_hypermutation(std::span<const std::uint8_t> x, Rng& rng, const TrajectoryVisitor& visit) {
  std::vector<std::uint8_t> current(x.begin(), x.end());
  const auto order = random_permutation(current.size(), rng);
  for (std::size_t step = 0; step < order.size(); ++step) {
    current[order[step]] ^= 1U;
    visit(step + 1, order[step], current);
  }
}

std::vector<std::vector<std::uint8_t>> hypermutation_full_trajectory(std::span<const std::uint8_t> x, Rng& rng) {
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(x.size());
  walk_hypermutation(x, rng, [&](std::size_t, std::size_t, std::span<const std::uint8_t> current) {
    out.emplace_back(current.begin(), current.end());
  });
  return out;
}

void sbm_positions(std::size_t n, Rng& rng, std::vector<std::size_t>& out) {
  out.clear();
  if (n == 0) return;
  if (n == 1) {
    out.push_back(0);
    return;
  }
  // Gap to the next flipped bit is geometric with success probability 1/n.
  std::geometric_distribution<std::size_t> gap(1.0 / static_cast<double>(n));
  std::size_t i = gap(rng);
  while (i < n) {
    out.push_back(i);
    const std::size_t skip = gap(rng);
    if (skip >= n) break;
    i += skip + 1;
  }
}

std::vector<std::size_t> sbm_positions(std::size_t n, Rng& rng) {
  std::vector<std::size_t> out;
  sbm_positions(n, rng, out);
  return out;
}

Assignment sbm(const Instance& inst, const Assignment& x, Rng& rng) {
  Assignment y = x;
  for (std::size_t i : sbm_positions(inst.n(), rng)) y.flip(inst, i);
  return y;
}

Assignment one_bit_flip(const Instance& inst, const Assignment& x, Rng& rng) {
  Assignment y = x;
  y.flip(inst, uniform_index(rng, inst.n()));
  return y;
}

}  // namespace aispart
