#include "aispart/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "aispart/errors.hpp"
#include "aispart/instances.hpp"

namespace aispart {

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::IaHyp: return "iahyp";
    case AlgorithmKind::Ageing: return "ageing";
    case AlgorithmKind::Ea: return "ea";
    case AlgorithmKind::Rls: return "rls";
    case AlgorithmKind::EaRestart: return "ea-restart";
    case AlgorithmKind::RlsRestart: return "rls-restart";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view name) {
  for (auto kind : {AlgorithmKind::IaHyp, AlgorithmKind::Ageing, AlgorithmKind::Ea, AlgorithmKind::Rls,
                    AlgorithmKind::EaRestart, AlgorithmKind::RlsRestart}) {
    if (to_string(kind) == name) return kind;
  }
  throw ValidationError("unknown algorithm '" + std::string(name) +
                        "' (expected iahyp, ageing, ea, rls, ea-restart or rls-restart)");
}

std::string_view to_string(OptimumSource source) {
  switch (source) {
    case OptimumSource::Dp: return "dp";
    case OptimumSource::Brute: return "brute";
    case OptimumSource::Provided: return "provided";
    case OptimumSource::None: return "none";
  }
  return "unknown";
}

void AlgorithmSpec::validate() const {
  switch (kind) {
    case AlgorithmKind::Ageing:
      if (mu < 1) throw ValidationError("ageing needs mu >= 1");
      if (!tau) throw ValidationError("ageing needs an ageing threshold tau");
      if (*tau < 1) throw ValidationError("ageing needs tau >= 1");
      break;
    case AlgorithmKind::EaRestart:
    case AlgorithmKind::RlsRestart:
      if (!restart_length || *restart_length < 1) throw ValidationError("restart algorithms need a restart length >= 1");
      break;
    default:
      break;
  }
}

TrialResult run_trial(const Instance& inst, const AlgorithmSpec& algo, const StopCondition& stop, std::uint64_t seed,
                      const EvaluationObserver& observer) {
  algo.validate();
  switch (algo.kind) {
    case AlgorithmKind::IaHyp: return run_ia_hyp(inst, stop, seed, observer);
    case AlgorithmKind::Ageing: return run_mu_ea_ageing(inst, algo.mu, *algo.tau, stop, seed, observer);
    case AlgorithmKind::Ea: return run_one_one_ea(inst, stop, seed, observer);
    case AlgorithmKind::Rls: return run_rls(inst, stop, seed, observer);
    case AlgorithmKind::EaRestart:
      return run_with_restarts(RestartBase::OneOneEa, inst, *algo.restart_length, stop, seed, observer);
    case AlgorithmKind::RlsRestart:
      return run_with_restarts(RestartBase::Rls, inst, *algo.restart_length, stop, seed, observer);
  }
  throw ContractViolation("unhandled algorithm kind");
}

double quantile(std::span<const std::uint64_t> sorted, double q) {
  if (sorted.empty()) return 0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return static_cast<double>(sorted[lo]) * (1 - frac) + static_cast<double>(sorted[hi]) * frac;
}

Summary summarise(std::span<const TrialResult> trials, std::optional<Weight> optimum, std::optional<Weight> target,
                  const std::optional<LocalOptimaSummary>& local_optima) {
  Summary s;
  s.trials = trials.size();
  if (trials.empty()) return s;

  std::vector<std::uint64_t> evals;
  evals.reserve(trials.size());
  for (const auto& t : trials) evals.push_back(t.evaluations_used);
  std::sort(evals.begin(), evals.end());
  s.evaluations.min = evals.front();
  s.evaluations.max = evals.back();
  s.evaluations.mean = std::accumulate(evals.begin(), evals.end(), 0.0) / static_cast<double>(evals.size());
  s.evaluations.q10 = quantile(evals, 0.1);
  s.evaluations.q50 = quantile(evals, 0.5);
  s.evaluations.q90 = quantile(evals, 0.9);
  s.evaluations.median = s.evaluations.q50;

  std::size_t successes = 0;
  for (const auto& t : trials) {
    if (target ? t.best_makespan <= *target : (optimum && t.best_makespan == *optimum)) ++successes;
  }
  s.success_rate = static_cast<double>(successes) / static_cast<double>(trials.size());

  if (optimum) {
    double sum = 0;
    double worst = 0;
    for (const auto& t : trials) {
      const double r = to_double(t.best_makespan) / to_double(*optimum);
      sum += r;
      worst = std::max(worst, r);
    }
    s.ratio_mean = sum / static_cast<double>(trials.size());
    s.ratio_max = worst;
  }

  if (local_optima && !local_optima->distinct_makespans.empty()) {
    // The smallest locally optimal makespan is the global optimum.
    const Weight best_possible = local_optima->distinct_makespans.front();
    std::size_t stuck = 0;
    for (const auto& t : trials) {
      if (t.best_makespan > best_possible && local_optima->contains(t.best_makespan)) ++stuck;
    }
    s.stuck_rate = static_cast<double>(stuck) / static_cast<double>(trials.size());
  }
  return s;
}

AggregateReport run_experiment(const Instance& inst, const ExperimentConfig& config) {
  if (config.trials < 1) throw ValidationError("an experiment needs at least one trial");
  config.algorithm.validate();

  AggregateReport report;
  report.n = inst.n();
  report.family = inst.meta().family;
  report.algorithm = config.algorithm;
  report.master_seed = config.master_seed;

  switch (config.optimum_source) {
    case OptimumSource::Dp: report.optimum = dp_optimal_makespan(inst); break;
    case OptimumSource::Brute: report.optimum = brute_force_optimum(inst).makespan; break;
    case OptimumSource::Provided:
      if (!config.provided_optimum) throw ValidationError("optimum source 'provided' without a value");
      report.optimum = config.provided_optimum;
      break;
    case OptimumSource::None: break;
  }
  StopCondition stop = config.stop;
  if (report.optimum) stop.optimum = report.optimum;
  stop.validate();
  report.target = stop.effective_target();
  if (config.classify_stuck) report.local_optima = known_local_optima(inst);

  report.trials.resize(config.trials);
  std::size_t workers = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
  workers = std::min(workers, config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        report.trials[i] = run_trial(inst, config.algorithm, stop, derive_seed(config.master_seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  report.summary = summarise(report.trials, report.optimum, report.target, report.local_optima);
  return report;
}

Instance make_instance(const FamilySpec& family, std::int64_t n) {
  if (family.family == "gstar") return gen_g_star(GStarParams{n, family.s, family.eps, family.scale});
  if (family.family == "pstar") return gen_p_star(n, family.eps, family.scale);
  if (family.family == "uniform") return gen_uniform(n, family.max_p, family.seed);
  throw ValidationError("unknown instance family '" + family.family + "' (expected gstar, pstar or uniform)");
}

std::vector<AggregateReport> scaling_sweep(const FamilySpec& family, std::span<const std::int64_t> n_list,
                                           const ExperimentConfig& config) {
  std::vector<Instance> instances;
  instances.reserve(n_list.size());
  for (auto n : n_list) instances.push_back(make_instance(family, n));
  std::vector<AggregateReport> reports;
  reports.reserve(n_list.size());
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    ExperimentConfig sub = config;
    sub.master_seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(n_list[j]));
    reports.push_back(run_experiment(instances[j], sub));
  }
  return reports;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ValidationError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

namespace {

std::string format_ratio(double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", r);
  return buf;
}

std::optional<double> rounded_ratio(Weight best, std::optional<Weight> optimum) {
  if (!optimum) return std::nullopt;
  return std::stod(format_ratio(to_double(best) / to_double(*optimum)));
}

nlohmann::ordered_json weight_json(Weight w) {
  if (w >= std::numeric_limits<std::int64_t>::min() && w <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(w);
  }
  return to_string(w);
}

template <class T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Weight>) {
    return weight_json(*v);
  } else {
    return *v;
  }
}

nlohmann::ordered_json row_json(const ReportRow& row) {
  nlohmann::ordered_json j;
  j["trial"] = row.trial;
  j["seed"] = row.seed;
  j["n"] = row.n;
  j["family"] = row.family;
  j["algorithm"] = row.algorithm;
  j["mu"] = optional_json(row.mu);
  j["tau"] = optional_json(row.tau);
  j["evaluations"] = row.evaluations;
  j["best_makespan"] = weight_json(row.best_makespan);
  j["optimum"] = optional_json(row.optimum);
  j["ratio"] = optional_json(row.ratio);
  j["terminated_by"] = row.terminated_by;
  j["reinit_count"] = row.reinit_count;
  return j;
}

nlohmann::ordered_json report_json(const AggregateReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["family"] = report.family;
  j["algorithm"] = to_string(report.algorithm.kind);
  j["master_seed"] = report.master_seed;
  j["optimum"] = optional_json(report.optimum);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report_rows(report)) rows.push_back(row_json(row));
  j["trials"] = std::move(rows);
  const auto& s = report.summary;
  nlohmann::ordered_json sj;
  sj["trials"] = s.trials;
  sj["evaluations"] = {{"mean", s.evaluations.mean}, {"median", s.evaluations.median}, {"min", s.evaluations.min},
                       {"max", s.evaluations.max},   {"q10", s.evaluations.q10},       {"q50", s.evaluations.q50},
                       {"q90", s.evaluations.q90}};
  sj["success_rate"] = s.success_rate;
  sj["ratio_mean"] = optional_json(s.ratio_mean);
  sj["ratio_max"] = optional_json(s.ratio_max);
  sj["stuck_rate"] = optional_json(s.stuck_rate);
  j["summary"] = std::move(sj);
  return j;
}

std::string optional_field(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

std::vector<ReportRow> report_rows(const AggregateReport& report) {
  std::vector<ReportRow> rows;
  rows.reserve(report.trials.size());
  const bool ageing = report.algorithm.kind == AlgorithmKind::Ageing;
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    ReportRow row;
    row.trial = i;
    row.seed = t.seed;
    row.n = report.n;
    row.family = report.family;
    row.algorithm = std::string(to_string(report.algorithm.kind));
    if (ageing) {
      row.mu = report.algorithm.mu;
      row.tau = report.algorithm.tau;
    }
    row.evaluations = t.evaluations_used;
    row.best_makespan = t.best_makespan;
    row.optimum = report.optimum;
    row.ratio = rounded_ratio(t.best_makespan, report.optimum);
    row.terminated_by = std::string(to_string(t.terminated_by));
    row.reinit_count = t.reinit_count;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::span<const AggregateReport> reports, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& report : reports) {
    for (const auto& r : report_rows(report)) {
      out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.family << ',' << r.algorithm << ','
          << optional_field(r.mu) << ',' << optional_field(r.tau) << ',' << r.evaluations << ','
          << to_string(r.best_makespan) << ',' << (r.optimum ? to_string(*r.optimum) : "") << ','
          << (r.ratio ? format_ratio(*r.ratio) : "") << ',' << r.terminated_by << ',' << r.reinit_count << '\n';
    }
  }
}

void write_json(const AggregateReport& report, std::ostream& out) { out << report_json(report).dump(2) << '\n'; }

void write_json(std::span<const AggregateReport> reports, std::ostream& out) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  out << arr.dump(2) << '\n';
}

void export_report(const AggregateReport& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  if (format == ReportFormat::Csv) {
    write_csv(std::span(&report, 1), out);
  } else {
    write_json(report, out);
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::uint64_t parse_u64(const std::string& text, std::size_t line, const char* what) {
  const auto v = parse_weight(text);
  if (!v || *v < 0 || *v > static_cast<Weight>(std::numeric_limits<std::uint64_t>::max())) {
    throw ParseError(line, std::string("malformed ") + what + " '" + text + "'");
  }
  return static_cast<std::uint64_t>(*v);
}

Weight parse_w(const std::string& text, std::size_t line, const char* what) {
  const auto v = parse_weight(text);
  if (!v) throw ParseError(line, std::string("malformed ") + what + " '" + text + "'");
  return *v;
}

Weight json_weight(const nlohmann::json& j, std::size_t line, const char* what) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? static_cast<Weight>(j.get<std::uint64_t>()) : static_cast<Weight>(j.get<std::int64_t>());
  }
  if (j.is_string()) return parse_w(j.get<std::string>(), line, what);
  throw ParseError(line, std::string("malformed ") + what);
}

}  // namespace

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError(1, "unexpected CSV header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 13) throw ParseError(line_no, "expected 13 columns, found " + std::to_string(f.size()));
    ReportRow r;
    r.trial = parse_u64(f[0], line_no, "trial");
    r.seed = parse_u64(f[1], line_no, "seed");
    r.n = parse_u64(f[2], line_no, "n");
    r.family = f[3];
    r.algorithm = f[4];
    if (!f[5].empty()) r.mu = parse_u64(f[5], line_no, "mu");
    if (!f[6].empty()) r.tau = parse_u64(f[6], line_no, "tau");
    r.evaluations = parse_u64(f[7], line_no, "evaluations");
    r.best_makespan = parse_w(f[8], line_no, "best_makespan");
    if (!f[9].empty()) r.optimum = parse_w(f[9], line_no, "optimum");
    if (!f[10].empty()) {
      try {
        r.ratio = std::stod(f[10]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed ratio '" + f[10] + "'");
      }
    }
    r.terminated_by = f[11];
    r.reinit_count = parse_u64(f[12], line_no, "reinit_count");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> read_report_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  std::vector<ReportRow> rows;
  const auto read_report = [&](const nlohmann::json& report) {
    if (!report.is_object() || !report.contains("trials")) throw ParseError(1, "report object without 'trials'");
    for (const auto& t : report.at("trials")) {
      const std::size_t line = rows.size() + 1;
      try {
        ReportRow r;
        r.trial = t.at("trial").get<std::size_t>();
        r.seed = t.at("seed").get<std::uint64_t>();
        r.n = t.at("n").get<std::size_t>();
        r.family = t.at("family").get<std::string>();
        r.algorithm = t.at("algorithm").get<std::string>();
        if (!t.at("mu").is_null()) r.mu = t.at("mu").get<std::uint64_t>();
        if (!t.at("tau").is_null()) r.tau = t.at("tau").get<std::uint64_t>();
        r.evaluations = t.at("evaluations").get<std::uint64_t>();
        r.best_makespan = json_weight(t.at("best_makespan"), line, "best_makespan");
        if (!t.at("optimum").is_null()) r.optimum = json_weight(t.at("optimum"), line, "optimum");
        if (!t.at("ratio").is_null()) r.ratio = t.at("ratio").get<double>();
        r.terminated_by = t.at("terminated_by").get<std::string>();
        r.reinit_count = t.at("reinit_count").get<std::uint64_t>();
        rows.push_back(std::move(r));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(line, std::string("bad trial object: ") + e.what());
      }
    }
  };
  if (doc.is_array()) {
    for (const auto& report : doc) read_report(report);
  } else {
    read_report(doc);
  }
  return rows;
}

std::string summary_line(const AggregateReport& report) {
  const auto& s = report.summary;
  std::ostringstream out;
  char buf[64];
  const auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  out << "summary n=" << report.n << " algorithm=" << to_string(report.algorithm.kind) << " trials=" << s.trials
      << " success_rate=" << fmt(s.success_rate) << " median_evaluations=" << fmt(s.evaluations.median)
      << " mean_evaluations=" << fmt(s.evaluations.mean) << " q10=" << fmt(s.evaluations.q10)
      << " q90=" << fmt(s.evaluations.q90) << " min=" << s.evaluations.min << " max=" << s.evaluations.max;
  out << " optimum=" << (report.optimum ? to_string(*report.optimum) : "none");
  if (s.ratio_mean) out << " ratio_mean=" << fmt(*s.ratio_mean) << " ratio_max=" << fmt(*s.ratio_max);
  out << " stuck_rate=" << (s.stuck_rate ? fmt(*s.stuck_rate) : std::string("na"));
  return out.str();
}

}  // namespace aispart
