#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aispart/algorithms.hpp"
#include "aispart/core.hpp"
#include "aispart/oracles.hpp"

namespace aispart {

enum class AlgorithmKind { IaHyp, Ageing, Ea, Rls, EaRestart, RlsRestart };

std::string_view to_string(AlgorithmKind kind);
/// Accepts the CLI names: iahyp, ageing, ea, rls, ea-restart, rls-restart.
AlgorithmKind parse_algorithm(std::string_view name);

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::IaHyp;
  std::size_t mu = 1;
  std::optional<std::uint64_t> tau;
  std::optional<std::uint64_t> restart_length;

  void validate() const;
};

/// Runs one trial of `algo` with its own RNG stream.
TrialResult run_trial(const Instance& inst, const AlgorithmSpec& algo, const StopCondition& stop, std::uint64_t seed,
                      const EvaluationObserver& observer = {});

enum class OptimumSource { Dp, Brute, Provided, None };

std::string_view to_string(OptimumSource source);

struct ExperimentConfig {
  AlgorithmSpec algorithm;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  /// `stop.optimum` is filled in from `optimum_source` before trials start.
  StopCondition stop;
  OptimumSource optimum_source = OptimumSource::None;
  std::optional<Weight> provided_optimum;
  /// Worker threads; 0 means hardware concurrency.
  std::size_t threads = 0;
  /// Compute local optima (exhaustively or by load class) for stuck_rate.
  bool classify_stuck = true;
};

struct EvaluationStats {
  double mean = 0;
  double median = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double q10 = 0;
  double q50 = 0;
  double q90 = 0;
};

struct Summary {
  std::size_t trials = 0;
  EvaluationStats evaluations;
  /// Fraction of trials that met the stop target, or reached the optimum
  /// when no target was set.
  double success_rate = 0;
  std::optional<double> ratio_mean;
  std::optional<double> ratio_max;
  /// Fraction of trials whose best makespan is a locally optimal value
  /// above the optimum.
  std::optional<double> stuck_rate;
};

struct AggregateReport {
  std::size_t n = 0;
  std::string family;
  AlgorithmSpec algorithm;
  std::uint64_t master_seed = 0;
  std::optional<Weight> optimum;
  std::optional<Weight> target;
  std::vector<TrialResult> trials;
  std::optional<LocalOptimaSummary> local_optima;
  Summary summary;
};

/// Recomputes the summary from per-trial rows alone.
Summary summarise(std::span<const TrialResult> trials, std::optional<Weight> optimum, std::optional<Weight> target,
                  const std::optional<LocalOptimaSummary>& local_optima);

/// Linear-interpolation quantile of a sorted sample, q in [0, 1].
double quantile(std::span<const std::uint64_t> sorted, double q);

/// Resolves the optimum (capacity errors surface here, before any trial),
/// then runs `trials` independent trials; trial i uses the stream
/// derive_seed(master_seed, i). Output order is by trial index whatever the
/// thread count.
AggregateReport run_experiment(const Instance& inst, const ExperimentConfig& config);

/// Instance family used by sweeps and the CLI.
struct FamilySpec {
  std::string family = "gstar";  // gstar | pstar | uniform
  std::int64_t s = 2;
  Rational eps{1, 4};
  Weight scale = 1;
  std::int64_t max_p = 100;
  std::uint64_t seed = 0;
};

Instance make_instance(const FamilySpec& family, std::int64_t n);

/// One experiment per n, in list order. Experiment j runs with master seed
/// derive_seed(config.master_seed, n_j).
std::vector<AggregateReport> scaling_sweep(const FamilySpec& family, std::span<const std::int64_t> n_list,
                                           const ExperimentConfig& config);

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "trial,seed,n,family,algorithm,mu,tau,evaluations,best_makespan,optimum,ratio,terminated_by,reinit_count";

/// One exported per-trial row.
struct ReportRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string family;
  std::string algorithm;
  std::optional<std::uint64_t> mu;
  std::optional<std::uint64_t> tau;
  std::uint64_t evaluations = 0;
  Weight best_makespan = 0;
  std::optional<Weight> optimum;
  std::optional<double> ratio;
  std::string terminated_by;
  std::uint64_t reinit_count = 0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

std::vector<ReportRow> report_rows(const AggregateReport& report);

void write_csv(std::span<const AggregateReport> reports, std::ostream& out);
void write_json(const AggregateReport& report, std::ostream& out);
/// Several reports as a JSON array of report objects.
void write_json(std::span<const AggregateReport> reports, std::ostream& out);

/// Throws IoError naming the path.
void export_report(const AggregateReport& report, ReportFormat format, const std::filesystem::path& path);

/// Throws ParseError.
std::vector<ReportRow> read_report_csv(std::istream& in);
std::vector<ReportRow> read_report_json(std::istream& in);

/// One-line, key=value description of a report's summary.
std::string summary_line(const AggregateReport& report);

}  // namespace aispart
