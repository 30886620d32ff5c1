#include "aispart/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <thread>

#include <boost/dynamic_bitset.hpp>

#include "aispart/errors.hpp"

namespace aispart {
namespace {

using Row = boost::dynamic_bitset<std::uint64_t>;

std::size_t dp_half(const Instance& inst) {
  const Weight cells = checked_mul(static_cast<Weight>(inst.n()), inst.total(), "DP table size");
  if (cells > static_cast<Weight>(kDpCellLimit)) {
    throw CapacityError("instance too large for the DP oracle: n*W = " + to_string(cells) + " exceeds " +
                        std::to_string(kDpCellLimit) + " cells");
  }
  return static_cast<std::size_t>(inst.total() / 2);
}

std::size_t highest_reachable(const Row& row) {
  for (std::size_t s = row.size(); s-- > 0;) {
    if (row.test(s)) return s;
  }
  return 0;
}

void require_enumerable(const Instance& inst) {
  if (inst.n() > kEnumerationLimit) {
    throw CapacityError("exhaustive oracle supports n <= " + std::to_string(kEnumerationLimit) + ", got n=" +
                        std::to_string(inst.n()));
  }
}

// Walks assignments with job 0 on M1 in reflected Gray order, covering codes
// [begin, end) of the (n-1)-bit counter. `visit(bits, load1)` sees every
// assignment once.
template <class Visit>
void gray_scan(const Instance& inst, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  const std::size_t n = inst.n();
  std::vector<std::uint8_t> bits(n, 0);
  const std::uint64_t start = begin ^ (begin >> 1);
  for (std::size_t j = 1; j < n; ++j) bits[j] = static_cast<std::uint8_t>((start >> (j - 1)) & 1U);
  Weight load1 = recompute_load1(inst, bits);
  for (std::uint64_t g = begin; g < end; ++g) {
    if (g != begin) {
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(g)) + 1;
      if (bits[j]) {
        bits[j] = 0;
        load1 += inst.p(j);
      } else {
        bits[j] = 1;
        load1 -= inst.p(j);
      }
    }
    visit(std::span<const std::uint8_t>(bits), load1);
  }
}

// Splits the Gray range across worker threads; each worker owns a Partial.
template <class Partial, class Visit>
std::vector<Partial> parallel_gray_scan(const Instance& inst, Visit visit) {
  const std::uint64_t total = std::uint64_t{1} << (inst.n() - 1);
  std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  if (total < (std::uint64_t{1} << 14)) workers = 1;
  workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, total));
  std::vector<Partial> partials(workers);
  const auto run = [&](std::size_t w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    gray_scan(inst, lo, hi, [&](std::span<const std::uint8_t> bits, Weight load1) { visit(partials[w], bits, load1); });
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }
  return partials;
}

LocalOptimaSummary summarise(std::set<Weight> makespans, std::span<const Weight> thresholds) {
  LocalOptimaSummary summary;
  summary.distinct_makespans.assign(makespans.begin(), makespans.end());
  for (Weight t : thresholds) summary.count_above[t] = summary.count_strictly_above(t);
  return summary;
}

}  // namespace

bool dp_feasible(const Instance& inst) {
  Weight cells;
  if (__builtin_mul_overflow(static_cast<Weight>(inst.n()), inst.total(), &cells)) return false;
  return cells <= static_cast<Weight>(kDpCellLimit);
}

Weight dp_optimal_makespan(const Instance& inst) {
  const std::size_t half = dp_half(inst);
  Row reach(half + 1);
  reach.set(0);
  for (Weight p : inst.times()) {
    if (p > static_cast<Weight>(half)) continue;
    reach |= reach << static_cast<std::size_t>(p);
  }
  return inst.total() - static_cast<Weight>(highest_reachable(reach));
}

OptimalSolution dp_optimal_assignment(const Instance& inst) {
  const std::size_t half = dp_half(inst);
  // rows[i] = loads reachable with a subset of the first i jobs.
  std::vector<Row> rows;
  rows.reserve(inst.n() + 1);
  rows.emplace_back(half + 1);
  rows.back().set(0);
  for (Weight p : inst.times()) {
    Row next = rows.back();
    if (p <= static_cast<Weight>(half)) next |= rows.back() << static_cast<std::size_t>(p);
    rows.push_back(std::move(next));
  }
  std::size_t load = highest_reachable(rows.back());
  // Jobs in the subset go to M1, everything else to M2.
  std::vector<std::uint8_t> bits(inst.n(), 1);
  for (std::size_t i = inst.n(); i-- > 0;) {
    if (rows[i].test(load)) continue;
    bits[i] = 0;
    load -= static_cast<std::size_t>(inst.p(i));
  }
  OptimalSolution out{0, Assignment::from_bits(inst, std::move(bits))};
  out.makespan = out.assignment.makespan();
  return out;
}

OptimalSolution brute_force_optimum(const Instance& inst) {
  require_enumerable(inst);
  struct Best {
    Weight makespan = -1;
    std::vector<std::uint8_t> bits;
  };
  const Weight total = inst.total();
  const auto partials = parallel_gray_scan<Best>(inst, [total](Best& best, std::span<const std::uint8_t> bits, Weight load1) {
    const Weight f = std::max(load1, total - load1);
    if (best.makespan < 0 || f < best.makespan) {
      best.makespan = f;
      best.bits.assign(bits.begin(), bits.end());
    }
  });
  const Best* winner = &partials.front();
  for (const auto& p : partials) {
    if (p.makespan >= 0 && (winner->makespan < 0 || p.makespan < winner->makespan)) winner = &p;
  }
  OptimalSolution out{winner->makespan, Assignment::from_bits(inst, winner->bits)};
  return out;
}

Assignment lpt(const Instance& inst) {
  Assignment x = Assignment::zeros(inst);
  Weight load1 = 0;
  Weight load2 = 0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (load1 <= load2) {
      load1 += inst.p(i);
    } else {
      load2 += inst.p(i);
      x.flip(inst, i);
    }
  }
  return x;
}

std::size_t LocalOptimaSummary::count_strictly_above(Weight threshold) const {
  const auto it = std::upper_bound(distinct_makespans.begin(), distinct_makespans.end(), threshold);
  return static_cast<std::size_t>(distinct_makespans.end() - it);
}

std::size_t LocalOptimaSummary::count_above_ratio(const Rational& ratio, Weight optimum) const {
  // For integer y: y > ratio * opt  <=>  y > floor(ratio * opt).
  return count_strictly_above(checked_mul(ratio.num(), optimum, "ratio threshold") / ratio.den());
}

bool LocalOptimaSummary::contains(Weight makespan) const {
  return std::binary_search(distinct_makespans.begin(), distinct_makespans.end(), makespan);
}

LocalOptimaSummary enumerate_local_optima(const Instance& inst, std::span<const Weight> thresholds) {
  require_enumerable(inst);
  const Weight total = inst.total();
  const std::size_t n = inst.n();
  const auto partials = parallel_gray_scan<std::set<Weight>>(
      inst, [&](std::set<Weight>& found, std::span<const std::uint8_t> bits, Weight load1) {
        const Weight load2 = total - load1;
        const Weight d = load1 > load2 ? load1 - load2 : load2 - load1;
        bool local = true;
        if (d > 0) {
          const std::uint8_t fuller = load1 > load2 ? 0 : 1;
          for (std::size_t i = n; i-- > 0;) {
            if (bits[i] == fuller) {
              local = inst.p(i) >= d;
              break;
            }
          }
        }
        if (local) found.insert(std::max(load1, load2));
      });
  std::set<Weight> all;
  for (const auto& p : partials) all.insert(p.begin(), p.end());
  return summarise(std::move(all), thresholds);
}

LocalOptimaSummary grouped_local_optima(const Instance& inst, std::span<const Weight> thresholds,
                                        std::uint64_t class_limit) {
  std::vector<Weight> sizes;
  std::vector<std::uint64_t> counts;
  for (Weight p : inst.times()) {
    if (sizes.empty() || sizes.back() != p) {
      sizes.push_back(p);
      counts.push_back(0);
    }
    ++counts.back();
  }
  std::uint64_t classes = 1;
  for (auto c : counts) {
    if (__builtin_mul_overflow(classes, c + 1, &classes) || classes > class_limit) {
      throw CapacityError("too many load classes for grouped local-optimum enumeration");
    }
  }

  const Weight total = inst.total();
  std::set<Weight> found;
  std::vector<std::uint64_t> on_m1(sizes.size(), 0);
  for (std::uint64_t step = 0; step < classes; ++step) {
    Weight load1 = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) load1 += sizes[j] * static_cast<Weight>(on_m1[j]);
    const Weight load2 = total - load1;
    const Weight d = load1 > load2 ? load1 - load2 : load2 - load1;
    bool local = true;
    if (d > 0) {
      const bool m1_fuller = load1 > load2;
      // sizes are descending: the last class present on the fuller machine is its smallest job.
      for (std::size_t j = sizes.size(); j-- > 0;) {
        const std::uint64_t present = m1_fuller ? on_m1[j] : counts[j] - on_m1[j];
        if (present > 0) {
          local = sizes[j] >= d;
          break;
        }
      }
    }
    if (local) found.insert(std::max(load1, load2));

    for (std::size_t j = 0; j < on_m1.size(); ++j) {
      if (++on_m1[j] <= counts[j]) break;
      on_m1[j] = 0;
    }
  }
  return summarise(std::move(found), thresholds);
}

std::optional<LocalOptimaSummary> known_local_optima(const Instance& inst) {
  if (inst.n() <= kEnumerationLimit) return enumerate_local_optima(inst);
  try {
    return grouped_local_optima(inst);
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

EvaluationObserver record_best_so_far(FitnessTrace& trace) {
  trace = FitnessTrace{};
  return [&trace](std::uint64_t evaluation, Weight fitness) {
    trace.evaluations = evaluation;
    if (trace.changes.empty() || fitness < trace.changes.back().second) trace.changes.emplace_back(evaluation, fitness);
  };
}

std::uint64_t IntervalProgress::total() const {
  std::uint64_t sum = above_top + below_bottom;
  for (auto v : at_level) sum += v;
  for (auto v : inside) sum += v;
  return sum;
}

IntervalProgress interval_progress_stat(const LocalOptimaSummary& optima, const FitnessTrace& trace) {
  IntervalProgress out;
  out.levels.assign(optima.distinct_makespans.rbegin(), optima.distinct_makespans.rend());
  const std::size_t levels = out.levels.size();
  out.at_level.assign(levels, 0);
  out.inside.assign(levels > 0 ? levels - 1 : 0, 0);

  const auto bin = [&](Weight f, std::uint64_t count) {
    if (levels == 0 || f > out.levels.front()) {
      out.above_top += count;
      return;
    }
    if (f < out.levels.back()) {
      out.below_bottom += count;
      return;
    }
    // First level <= f (levels are descending).
    const auto it = std::lower_bound(out.levels.begin(), out.levels.end(), f, std::greater<>{});
    const auto i = static_cast<std::size_t>(it - out.levels.begin());
    if (*it == f) {
      out.at_level[i] += count;
    } else {
      out.inside[i - 1] += count;
    }
  };

  for (std::size_t k = 0; k < trace.changes.size(); ++k) {
    const std::uint64_t from = trace.changes[k].first;
    const std::uint64_t to = k + 1 < trace.changes.size() ? trace.changes[k + 1].first : trace.evaluations + 1;
    bin(trace.changes[k].second, to - from);
  }
  return out;
}

}  // namespace aispart
