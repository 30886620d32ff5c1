#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aispart/rational.hpp"
#include "aispart/rng.hpp"
#include "aispart/weight.hpp"

namespace aispart {

/// Where an instance came from. `s`, `eps` and `scale` are meaningful for
/// the gstar family only; other families keep the neutral defaults.
struct InstanceMeta {
  std::string family = "custom";
  std::int64_t s = 0;
  Rational eps{0, 1};
  Weight scale = 1;
  /// Set when the processing times had to be reordered on construction.
  bool resorted = false;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

/// Two-machine makespan / Partition instance. Processing times are positive
/// and kept in non-increasing order.
class Instance {
 public:
  /// Validates positivity and the 128-bit total, then sorts non-increasing.
  /// Throws ValidationError.
  explicit Instance(std::vector<Weight> times, InstanceMeta meta = {});

  std::size_t n() const { return times_.size(); }
  std::span<const Weight> times() const { return times_; }
  Weight p(std::size_t i) const { return times_[i]; }
  Weight total() const { return total_; }
  const InstanceMeta& meta() const { return meta_; }

  /// ceil(W / 2), the trivial lower bound on every makespan.
  Weight lower_bound() const { return total_ - total_ / 2; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Weight> times_;
  Weight total_ = 0;
  InstanceMeta meta_;
};

/// Job-to-machine bitstring (0 = M1, 1 = M2) with cached machine loads.
class Assignment {
 public:
  Assignment() = default;

  static Assignment zeros(const Instance& inst);
  /// Throws ContractViolation on a length mismatch or a value other than 0/1.
  static Assignment from_bits(const Instance& inst, std::vector<std::uint8_t> bits);
  static Assignment from_string(const Instance& inst, std::string_view bits);
  /// Each bit is 1 with probability 1/2.
  static Assignment random(const Instance& inst, Rng& rng);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  Weight load1() const { return load1_; }
  Weight load2() const { return load2_; }
  Weight makespan() const { return load1_ > load2_ ? load1_ : load2_; }
  Weight discrepancy() const { return load1_ > load2_ ? load1_ - load2_ : load2_ - load1_; }
  std::size_t ones() const;

  /// Unchecked O(1) toggle of bit i.
  void flip(const Instance& inst, std::size_t i) {
    if (bits_[i]) {
      bits_[i] = 0;
      load1_ += inst.p(i);
      load2_ -= inst.p(i);
    } else {
      bits_[i] = 1;
      load1_ -= inst.p(i);
      load2_ += inst.p(i);
    }
  }

  void complement_in_place();

  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  Weight load1_ = 0;
  Weight load2_ = 0;
};

/// max(load1, load2). Throws ContractViolation if x does not match inst.
Weight makespan(const Instance& inst, const Assignment& x);

/// Toggles bit i, updating loads by +-p_i. Throws ContractViolation when
/// i >= n or the lengths differ.
void flip_in_place(const Instance& inst, Assignment& x, std::size_t i);

/// True iff no single bit flip strictly decreases the makespan.
bool is_local_optimum(const Instance& inst, const Assignment& x);

Assignment complement(const Assignment& x);

/// Load of M1 summed from scratch.
Weight recompute_load1(const Instance& inst, std::span<const std::uint8_t> bits);

using EvaluationObserver = std::function<void(std::uint64_t evaluation, Weight fitness)>;

/// Central fitness-evaluation ledger. Every makespan computed on behalf of a
/// search heuristic goes through evaluate(), which charges exactly one
/// evaluation, tracks the best sample seen so far and reports whether the
/// budget or target has been hit.
class EvaluationCounter {
 public:
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  explicit EvaluationCounter(std::uint64_t limit = kUnlimited, std::optional<Weight> target = std::nullopt,
                             EvaluationObserver observer = {});

  Weight evaluate(const Assignment& x);

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }
  bool exhausted() const { return used_ >= limit_; }
  bool target_reached() const { return target_ && used_ > 0 && best_ <= *target_; }
  bool should_stop() const { return exhausted() || target_reached(); }

  bool has_best() const { return used_ > 0; }
  Weight best() const { return best_; }
  const Assignment& best_assignment() const { return best_assignment_; }

 private:
  std::uint64_t limit_;
  std::optional<Weight> target_;
  EvaluationObserver observer_;
  std::uint64_t used_ = 0;
  Weight best_ = 0;
  Assignment best_assignment_;
};

}  // namespace aispart
