#include "aispart/core.hpp"

#include <algorithm>
#include <functional>

#include "aispart/errors.hpp"

namespace aispart {

Instance::Instance(std::vector<Weight> times, InstanceMeta meta) : times_(std::move(times)), meta_(std::move(meta)) {
  if (times_.empty()) throw ValidationError("instance needs at least one job");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (times_[i] < 1) {
      throw ValidationError("processing time " + std::to_string(i + 1) + " is " + aispart::to_string(times_[i]) +
                            ", must be a positive integer");
    }
    total_ = checked_add(total_, times_[i], "total load");
  }
  if (!std::is_sorted(times_.begin(), times_.end(), std::greater<>{})) {
    std::stable_sort(times_.begin(), times_.end(), std::greater<>{});
    meta_.resorted = true;
  }
}

Assignment Assignment::zeros(const Instance& inst) {
  Assignment x;
  x.bits_.assign(inst.n(), 0);
  x.load1_ = inst.total();
  x.load2_ = 0;
  return x;
}

Assignment Assignment::from_bits(const Instance& inst, std::vector<std::uint8_t> bits) {
  if (bits.size() != inst.n()) {
    throw ContractViolation("assignment has " + std::to_string(bits.size()) + " bits, instance has " +
                            std::to_string(inst.n()) + " jobs");
  }
  for (auto b : bits) {
    if (b > 1) throw ContractViolation("assignment bits must be 0 or 1");
  }
  Assignment x;
  x.load1_ = recompute_load1(inst, bits);
  x.load2_ = inst.total() - x.load1_;
  x.bits_ = std::move(bits);
  return x;
}

Assignment Assignment::from_string(const Instance& inst, std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw ContractViolation("assignment string may only contain 0 and 1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return from_bits(inst, std::move(out));
}

Assignment Assignment::random(const Instance& inst, Rng& rng) {
  Assignment x = zeros(inst);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (i % 64 == 0) word = rng();
    if ((word >> (i % 64)) & 1U) x.flip(inst, i);
  }
  return x;
}

std::size_t Assignment::ones() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

void Assignment::complement_in_place() {
  for (auto& b : bits_) b ^= 1U;
  std::swap(load1_, load2_);
}

std::string Assignment::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

namespace {

void require_matching(const Instance& inst, const Assignment& x) {
  if (x.size() != inst.n()) {
    throw ContractViolation("assignment length " + std::to_string(x.size()) + " does not match instance size " +
                            std::to_string(inst.n()));
  }
}

}  // namespace

Weight makespan(const Instance& inst, const Assignment& x) {
  require_matching(inst, x);
  return x.makespan();
}

void flip_in_place(const Instance& inst, Assignment& x, std::size_t i) {
  require_matching(inst, x);
  if (i >= inst.n()) {
    throw ContractViolation("flip index " + std::to_string(i) + " out of range for n=" + std::to_string(inst.n()));
  }
  x.flip(inst, i);
}

bool is_local_optimum(const Instance& inst, const Assignment& x) {
  require_matching(inst, x);
  // Moving job i off the fuller machine helps iff p_i < discrepancy; moving
  // a job off the emptier machine never helps. Times are non-increasing, so
  // the smallest job on the fuller machine is the last one found.
  const Weight d = x.discrepancy();
  if (d == 0) return true;
  const std::uint8_t fuller = x.load1() > x.load2() ? 0 : 1;
  for (std::size_t i = inst.n(); i-- > 0;) {
    if (x.bits()[i] == fuller) return inst.p(i) >= d;
  }
  return true;
}

Assignment complement(const Assignment& x) {
  Assignment y = x;
  y.complement_in_place();
  return y;
}

Weight recompute_load1(const Instance& inst, std::span<const std::uint8_t> bits) {
  Weight load = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == 0) load += inst.p(i);
  }
  return load;
}

EvaluationCounter::EvaluationCounter(std::uint64_t limit, std::optional<Weight> target, EvaluationObserver observer)
    : limit_(limit), target_(target), observer_(std::move(observer)) {}

Weight EvaluationCounter::evaluate(const Assignment& x) {
  const Weight f = x.makespan();
  ++used_;
  if (used_ == 1 || f < best_) {
    best_ = f;
    best_assignment_ = x;
  }
  if (observer_) observer_(used_, f);
  return f;
}

}  // namespace aispart
