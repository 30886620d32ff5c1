// aispart: generate instances, solve them exactly, run the heuristics, verify.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aispart/errors.hpp"
#include "aispart/harness.hpp"
#include "aispart/instances.hpp"
#include "aispart/oracles.hpp"
#include "aispart/verify.hpp"

using namespace aispart;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerify = 4;
constexpr int kExitIo = 1;

constexpr std::uint64_t kDefaultVerifySeed = 20240917;

// eps stays a fraction from the command line on.
Rational parse_fraction(const std::string& text, const char* flag) {
  if (text.find('/') == std::string::npos) {
    throw ValidationError(std::string(flag) + " must be a rational q/r, got '" + text + "'");
  }
  return Rational::parse(text);
}

Weight parse_weight_flag(const std::string& text, const char* flag) {
  auto w = parse_weight(text);
  if (!w) throw ValidationError(std::string(flag) + ": not an integer '" + text + "'");
  return *w;
}

struct InstanceFlags {
  std::string in;
  std::string family;
  std::int64_t n = 0;
  std::int64_t s = 2;
  std::string eps = "1/4";
  std::string scale = "1";
  std::int64_t max_p = 100;
  std::uint64_t instance_seed = 0;

  void add_family(CLI::App* cmd) {
    cmd->add_option("--family", family, "gstar | pstar | uniform")->check(CLI::IsMember({"gstar", "pstar", "uniform"}));
    cmd->add_option("--n", n, "number of jobs");
    cmd->add_option("--s", s, "number of large jobs (gstar)");
    cmd->add_option("--eps", eps, "family parameter as q/r");
    cmd->add_option("--scale", scale, "integer multiplier on all times");
    cmd->add_option("--max-p", max_p, "largest time (uniform)");
  }

  FamilySpec family_spec() const {
    FamilySpec f;
    f.family = family;
    f.s = s;
    f.eps = parse_fraction(eps, "--eps");
    f.scale = parse_weight_flag(scale, "--scale");
    f.max_p = max_p;
    f.seed = instance_seed;
    return f;
  }

  Instance load() const {
    if (!in.empty()) {
      if (!family.empty()) throw ValidationError("give either --in or --family, not both");
      return read_instance(std::filesystem::path(in));
    }
    if (family.empty()) throw ValidationError("an instance is needed: --in FILE or --family ...");
    if (n < 1) throw ValidationError("--n must be >= 1");
    return make_instance(family_spec(), n);
  }

  std::string describe() const {
    if (!in.empty()) return "in=" + in;
    return "family=" + family + " n=" + std::to_string(n) + " s=" + std::to_string(s) + " eps=" + eps +
           " scale=" + scale + " max_p=" + std::to_string(max_p) + " instance_seed=" + std::to_string(instance_seed);
  }
};

std::string job_summary(const Instance& inst) {
  // Runs of equal times, largest first.
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < inst.n()) {
    std::size_t j = i;
    while (j < inst.n() && inst.p(j) == inst.p(i)) ++j;
    out << (first ? "" : ",") << to_string(inst.p(i)) << "x" << (j - i);
    first = false;
    i = j;
  }
  return out.str();
}

struct RunFlags {
  InstanceFlags inst;
  std::string algo;
  std::size_t mu = 1;
  std::optional<std::uint64_t> tau;
  std::optional<std::uint64_t> restart_len;
  std::string approx_eps;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  std::string target_ratio;
  std::string optimum;
  bool budget_only = false;
  std::string format = "csv";
  std::string out;
  std::size_t threads = 0;
  std::string n_list;

  void add(CLI::App* cmd, bool sweep) {
    if (!sweep) cmd->add_option("--in", inst.in, "instance file");
    inst.add_family(cmd);
    cmd->add_option("--instance-seed", inst.instance_seed, "generator seed for uniform instances");
    cmd->add_option("--algo", algo, "iahyp | ageing | ea | rls | ea-restart | rls-restart")->required();
    cmd->add_option("--mu", mu, "population size (ageing)");
    cmd->add_option("--tau", tau, "ageing threshold (ageing)");
    cmd->add_option("--restart-len", restart_len, "evaluations per restart segment");
    cmd->add_option("--approx-eps", approx_eps, "derive the restart length from this q/r");
    cmd->add_option("--trials", trials, "independent trials");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--budget", budget, "evaluation budget per trial");
    cmd->add_option("--target-ratio", target_ratio, "stop at makespan <= ratio * optimum");
    cmd->add_option("--optimum", optimum, "known optimal makespan (skips the DP)");
    cmd->add_flag("--budget-only", budget_only, "no target; every trial spends its budget");
    cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "report file (default stdout)");
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    if (sweep) cmd->add_option("--n-list", n_list, "comma separated sizes")->required();
  }

  AlgorithmSpec algorithm_spec(std::size_t n) const {
    AlgorithmSpec a;
    a.kind = parse_algorithm(algo);
    a.mu = mu;
    a.tau = tau;
    if (a.kind == AlgorithmKind::Ageing && !tau) {
      throw ValidationError("--algo ageing needs --tau (the ageing threshold)");
    }
    const bool restarts = a.kind == AlgorithmKind::EaRestart || a.kind == AlgorithmKind::RlsRestart;
    if (restarts) {
      if (restart_len) {
        a.restart_length = restart_len;
      } else if (!approx_eps.empty()) {
        a.restart_length = restart_segment_length(n, parse_fraction(approx_eps, "--approx-eps"));
      } else {
        throw ValidationError("--algo " + algo + " needs --restart-len or --approx-eps");
      }
    }
    a.validate();
    return a;
  }

  // Optimum and target resolution shared by run and sweep.
  ExperimentConfig config(const Instance& instance) const {
    ExperimentConfig c;
    c.algorithm = algorithm_spec(instance.n());
    c.trials = trials;
    c.master_seed = seed;
    c.threads = threads;
    c.stop.max_evaluations = budget;
    if (budget_only && !target_ratio.empty()) throw ValidationError("--budget-only and --target-ratio exclude each other");
    if (!optimum.empty()) {
      c.optimum_source = OptimumSource::Provided;
      c.provided_optimum = parse_weight_flag(optimum, "--optimum");
    } else if (dp_feasible(instance)) {
      c.optimum_source = OptimumSource::Dp;
    } else if (!budget_only) {
      throw ValidationError("the DP oracle cannot solve this instance (n*W too large); pass --optimum or --budget-only");
    }
    if (!budget_only) c.stop.target_ratio = target_ratio.empty() ? Rational(1, 1) : Rational::parse(target_ratio);
    return c;
  }

  std::string describe(const ExperimentConfig& c) const {
    std::ostringstream o;
    o << " algo=" << algo << " mu=" << c.algorithm.mu
      << " tau=" << (c.algorithm.tau ? std::to_string(*c.algorithm.tau) : "none")
      << " restart_len=" << (c.algorithm.restart_length ? std::to_string(*c.algorithm.restart_length) : "none")
      << " trials=" << trials << " seed=" << seed << " budget=" << budget
      << " target_ratio=" << (c.stop.target_ratio ? c.stop.target_ratio->to_string() : "none")
      << " optimum_source=" << to_string(c.optimum_source) << " format=" << format << " out=" << (out.empty() ? "-" : out)
      << " threads=" << threads;
    return o.str();
  }

  void emit(std::span<const AggregateReport> reports) const {
    std::ofstream file;
    if (!out.empty()) {
      file.open(out, std::ios::binary);
      if (!file) throw IoError("cannot open '" + out + "' for writing");
    }
    std::ostream& sink = out.empty() ? std::cout : file;
    if (format == "csv") {
      write_csv(reports, sink);
    } else if (reports.size() == 1) {
      write_json(reports.front(), sink);
    } else {
      write_json(reports, sink);
    }
    sink.flush();
    if (!sink) throw IoError("failed writing '" + (out.empty() ? std::string("stdout") : out) + "'");
  }
};

std::vector<std::int64_t> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> ns;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      ns.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("--n-list: bad size '" + item + "'");
    }
  }
  return ns;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition heuristics: immune-system hypermutation, ageing EAs, exact oracles"};
  app.require_subcommand(1);

  InstanceFlags gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "write an instance file");
  gen.add_family(generate);
  generate->get_option("--family")->required();
  generate->add_option("--seed", gen.instance_seed, "generator seed (uniform)");
  generate->add_option("--out", gen_out, "output path (default stdout)");

  std::string solve_in;
  std::string method = "dp";
  bool show_assignment = false;
  auto* solve = app.add_subcommand("solve", "exact or greedy makespan");
  solve->add_option("--in", solve_in, "instance file")->required();
  solve->add_option("--method", method, "dp | brute | lpt")->check(CLI::IsMember({"dp", "brute", "lpt"}));
  solve->add_flag("--assignment", show_assignment, "also print the assignment bits");

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "run an experiment");
  run_flags.add(run, false);

  RunFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "one experiment per size in --n-list");
  sweep_flags.add(sweep, true);
  sweep->get_option("--family")->required();

  std::string suite;
  std::uint64_t verify_seed = kDefaultVerifySeed;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "properties | trajectories | oracles")
      ->required()
      ->check(CLI::IsMember({"properties", "trajectories", "oracles"}));
  verify->add_option("--seed", verify_seed, "seed for the random parts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (generate->parsed()) {
      std::cout << "config command=generate " << gen.describe() << " out=" << (gen_out.empty() ? "-" : gen_out) << "\n";
      if (gen.n < 1) throw ValidationError("--n must be >= 1");
      const Instance inst = make_instance(gen.family_spec(), gen.n);
      std::cout << "W=" << to_string(inst.total()) << " n=" << inst.n() << " jobs=" << job_summary(inst) << "\n";
      if (gen_out.empty()) {
        write_instance(inst, std::cout);
      } else {
        write_instance(inst, std::filesystem::path(gen_out));
      }
    } else if (solve->parsed()) {
      std::cout << "config command=solve in=" << solve_in << " method=" << method
                << " assignment=" << (show_assignment ? "true" : "false") << "\n";
      const Instance inst = read_instance(std::filesystem::path(solve_in));
      Assignment x;
      Weight makespan_value = 0;
      if (method == "dp") {
        auto sol = dp_optimal_assignment(inst);
        makespan_value = sol.makespan;
        x = std::move(sol.assignment);
      } else if (method == "brute") {
        auto sol = brute_force_optimum(inst);
        makespan_value = sol.makespan;
        x = std::move(sol.assignment);
      } else {
        x = lpt(inst);
        makespan_value = x.makespan();
      }
      std::cout << "makespan=" << to_string(makespan_value) << "\n";
      if (show_assignment) std::cout << "assignment=" << x.to_string() << "\n";
    } else if (run->parsed()) {
      const Instance inst = run_flags.inst.load();
      const ExperimentConfig config = run_flags.config(inst);
      std::cout << "config command=run " << run_flags.inst.describe() << run_flags.describe(config) << "\n";
      const AggregateReport report = run_experiment(inst, config);
      run_flags.emit(std::span(&report, 1));
      std::cout << summary_line(report) << "\n";
    } else if (sweep->parsed()) {
      const auto ns = parse_n_list(sweep_flags.n_list);
      const FamilySpec family = sweep_flags.inst.family_spec();
      std::vector<AggregateReport> reports;
      std::cout << "config command=sweep " << sweep_flags.inst.describe() << " n_list=" << sweep_flags.n_list;
      bool printed = false;
      for (auto n : ns) {
        const Instance inst = make_instance(family, n);
        ExperimentConfig config = sweep_flags.config(inst);
        if (!printed) {
          std::cout << sweep_flags.describe(config);
          printed = true;
        }
        // Same per-size stream derivation as scaling_sweep.
        config.master_seed = derive_seed(sweep_flags.seed, static_cast<std::uint64_t>(n));
        reports.push_back(run_experiment(inst, config));
      }
      std::cout << "\n";
      sweep_flags.emit(reports);
      for (const auto& r : reports) std::cout << summary_line(r) << "\n";
    } else if (verify->parsed()) {
      std::cout << "config command=verify suite=" << suite << " seed=" << verify_seed << "\n";
      bool all = true;
      for (const auto& check : run_verify_suite(suite, verify_seed)) {
        std::cout << format_check(check) << "\n";
        all = all && check.passed;
      }
      return all ? kExitOk : kExitVerify;
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
