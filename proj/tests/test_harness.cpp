#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aispart/errors.hpp"
#include "aispart/harness.hpp"
#include "aispart/instances.hpp"

using namespace aispart;

namespace {

ExperimentConfig basic(AlgorithmKind kind, std::size_t trials, std::uint64_t seed, std::uint64_t budget) {
  ExperimentConfig c;
  c.algorithm.kind = kind;
  if (kind == AlgorithmKind::Ageing) {
    c.algorithm.mu = 3;
    c.algorithm.tau = 50;
  }
  if (kind == AlgorithmKind::EaRestart || kind == AlgorithmKind::RlsRestart) c.algorithm.restart_length = 40;
  c.trials = trials;
  c.master_seed = seed;
  c.stop.max_evaluations = budget;
  c.optimum_source = OptimumSource::Dp;
  c.stop.target_ratio = Rational(1, 1);
  return c;
}

std::string csv_of(const AggregateReport& r) {
  std::ostringstream out;
  write_csv(std::span(&r, 1), out);
  return out.str();
}

const std::vector<AlgorithmKind> kAll = {AlgorithmKind::IaHyp, AlgorithmKind::Ageing,    AlgorithmKind::Ea,
                                         AlgorithmKind::Rls,   AlgorithmKind::EaRestart, AlgorithmKind::RlsRestart};

}  // namespace

TEST_CASE("algorithm names") {
  for (auto k : kAll) CHECK(parse_algorithm(to_string(k)) == k);
  CHECK(parse_algorithm("ea-restart") == AlgorithmKind::EaRestart);
  CHECK_THROWS_AS(parse_algorithm("ga"), ValidationError);
  AlgorithmSpec ageing{AlgorithmKind::Ageing, 5, std::nullopt, std::nullopt};
  CHECK_THROWS_AS(ageing.validate(), ValidationError);
  AlgorithmSpec restart{AlgorithmKind::RlsRestart, 1, std::nullopt, std::nullopt};
  CHECK_THROWS_AS(restart.validate(), ValidationError);
  CHECK(parse_report_format("json") == ReportFormat::Json);
  CHECK_THROWS_AS(parse_report_format("xml"), ValidationError);
}

TEST_CASE("quantiles") {
  const std::vector<std::uint64_t> v{1, 2, 3, 4};
  CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(v, 0.0) == doctest::Approx(1));
  CHECK(quantile(v, 1.0) == doctest::Approx(4));
  CHECK(quantile(v, 0.1) == doctest::Approx(1.3));
  CHECK(quantile(std::vector<std::uint64_t>{7}, 0.9) == doctest::Approx(7));
}

TEST_CASE("one-trial batch equals a direct run") {
  const Instance g = gen_g_star(GStarParams{16, 2, {1, 4}, 1});
  for (auto kind : kAll) {
    const auto config = basic(kind, 1, 99, 5000);
    const auto report = run_experiment(g, config);
    StopCondition stop = config.stop;
    stop.optimum = dp_optimal_makespan(g);
    REQUIRE(report.trials.size() == 1);
    CHECK(report.trials[0] == run_trial(g, config.algorithm, stop, derive_seed(99, 0)));
    CHECK(report.optimum == g.total() / 2);
    CHECK(report.target == g.total() / 2);
  }
}

TEST_CASE("thread count does not change results") {
  const Instance u = gen_uniform(20, 300, 5);
  for (auto kind : kAll) {
    auto config = basic(kind, 24, 7, 3000);
    config.threads = 1;
    const auto serial = run_experiment(u, config);
    config.threads = 4;
    const auto parallel = run_experiment(u, config);
    CHECK(serial.trials == parallel.trials);
    CHECK(csv_of(serial) == csv_of(parallel));
  }
}

TEST_CASE("same master seed gives identical CSV bytes") {
  const Instance g = gen_g_star(GStarParams{24, 2, {1, 4}, 1});
  auto config = basic(AlgorithmKind::Ea, 20, 123, 20000);
  CHECK(csv_of(run_experiment(g, config)) == csv_of(run_experiment(g, config)));
  auto other = config;
  other.master_seed = 124;
  CHECK(csv_of(run_experiment(g, config)) != csv_of(run_experiment(g, other)));
}

TEST_CASE("summary is recomputable from trials") {
  const Instance g = gen_g_star(GStarParams{32, 2, {1, 4}, 1});
  auto config = basic(AlgorithmKind::Ea, 60, 5, 4000);
  const auto report = run_experiment(g, config);
  const auto again = summarise(report.trials, report.optimum, report.target, report.local_optima);
  CHECK(again.success_rate == report.summary.success_rate);
  CHECK(again.evaluations.median == report.summary.evaluations.median);
  CHECK(again.stuck_rate == report.summary.stuck_rate);
  CHECK(again.ratio_max == report.summary.ratio_max);
  CHECK(report.summary.success_rate >= 0);
  CHECK(report.summary.success_rate <= 1);
  std::size_t stuck = 0, success = 0;
  for (const auto& t : report.trials) {
    stuck += t.best_makespan == 390;
    success += t.best_makespan == 360;
  }
  REQUIRE(report.summary.stuck_rate);
  CHECK(*report.summary.stuck_rate == doctest::Approx(static_cast<double>(stuck) / 60));
  CHECK(report.summary.success_rate == doctest::Approx(static_cast<double>(success) / 60));
}

TEST_CASE("optimum sources") {
  const Instance g = gen_g_star(GStarParams{12, 2, {1, 4}, 1});
  auto config = basic(AlgorithmKind::Rls, 3, 1, 100);
  config.optimum_source = OptimumSource::Brute;
  CHECK(run_experiment(g, config).optimum == 120);
  config.optimum_source = OptimumSource::Provided;
  CHECK_THROWS_AS(run_experiment(g, config), ValidationError);
  config.provided_optimum = 120;
  CHECK(run_experiment(g, config).optimum == 120);
  config.optimum_source = OptimumSource::None;
  CHECK_THROWS_AS(run_experiment(g, config), ValidationError);  // ratio target without optimum
  config.stop.target_ratio.reset();
  const auto none = run_experiment(g, config);
  CHECK_FALSE(none.optimum);
  CHECK_FALSE(none.summary.ratio_mean);
  config.trials = 0;
  CHECK_THROWS_AS(run_experiment(g, config), ValidationError);
}

TEST_CASE("capacity errors surface before any trial") {
  const Instance big(testutil::w({1'000'000'000, 999'999'999, 3}));
  auto config = basic(AlgorithmKind::Ea, 5, 1, 100);
  CHECK_THROWS_AS(run_experiment(big, config), CapacityError);
}

TEST_CASE("scaling sweep") {
  FamilySpec family;
  auto config = basic(AlgorithmKind::IaHyp, 5, 11, 100000);
  const std::vector<std::int64_t> ns{8, 12, 16};
  const auto reports = scaling_sweep(family, ns, config);
  REQUIRE(reports.size() == 3);
  for (std::size_t j = 0; j < ns.size(); ++j) CHECK(reports[j].n == static_cast<std::size_t>(ns[j]));

  const std::vector<std::int64_t> one{12};
  const auto single = scaling_sweep(family, one, config);
  auto direct_config = config;
  direct_config.master_seed = derive_seed(11, 12);
  const auto direct = run_experiment(make_instance(family, 12), direct_config);
  CHECK(csv_of(single[0]) == csv_of(direct));
  CHECK(scaling_sweep(family, std::vector<std::int64_t>{}, config).empty());

  family.family = "bogus";
  CHECK_THROWS_AS(scaling_sweep(family, one, config), ValidationError);
}

TEST_CASE("csv export") {
  const Instance g = gen_g_star(GStarParams{16, 2, {1, 4}, 1});
  const auto report = run_experiment(g, basic(AlgorithmKind::Ageing, 4, 3, 10000));
  const std::string text = csv_of(report);
  CHECK(text.substr(0, text.find('\n')) ==
        "trial,seed,n,family,algorithm,mu,tau,evaluations,best_makespan,optimum,ratio,terminated_by,reinit_count");
  std::istringstream in(text);
  CHECK(read_report_csv(in) == report_rows(report));
  CHECK(text.find(",ageing,3,50,") != std::string::npos);

  auto config = basic(AlgorithmKind::Rls, 2, 3, 50);
  config.optimum_source = OptimumSource::None;
  config.stop.target_ratio.reset();
  const auto no_opt = run_experiment(g, config);
  const std::string bare = csv_of(no_opt);
  std::istringstream lines(bare);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) CHECK(line.find(",,,budget,") != std::string::npos);  // mu, tau, optimum, ratio empty
  std::istringstream back(bare);
  const auto rows = read_report_csv(back);
  CHECK_FALSE(rows[0].ratio);
  CHECK_FALSE(rows[0].optimum);
}

TEST_CASE("json export") {
  const Instance g = gen_g_star(GStarParams{16, 2, {1, 4}, 1});
  const auto report = run_experiment(g, basic(AlgorithmKind::IaHyp, 5, 3, 10000));
  std::stringstream buf;
  write_json(report, buf);
  const auto j = nlohmann::json::parse(buf.str());
  CHECK(j["trials"].size() == 5);
  CHECK(j["summary"]["success_rate"].get<double>() == doctest::Approx(report.summary.success_rate));
  CHECK(j["trials"][0].contains("reinit_count"));
  CHECK(j["trials"][0]["mu"].is_null());
  std::istringstream in(buf.str());
  CHECK(read_report_json(in) == report_rows(report));

  std::vector<AggregateReport> two{report, report};
  std::stringstream arr;
  write_json(two, arr);
  std::istringstream arr_in(arr.str());
  CHECK(read_report_json(arr_in).size() == 10);
}

TEST_CASE("export to files and errors") {
  const Instance g = gen_g_star(GStarParams{8, 2, {1, 4}, 1});
  const auto report = run_experiment(g, basic(AlgorithmKind::Ea, 3, 3, 1000));
  const auto dir = std::filesystem::temp_directory_path();
  export_report(report, ReportFormat::Csv, dir / "aispart_report.csv");
  export_report(report, ReportFormat::Json, dir / "aispart_report.json");
  std::ifstream csv(dir / "aispart_report.csv");
  CHECK(read_report_csv(csv) == report_rows(report));
  std::ifstream json(dir / "aispart_report.json");
  CHECK(read_report_json(json) == report_rows(report));
  std::filesystem::remove(dir / "aispart_report.csv");
  std::filesystem::remove(dir / "aispart_report.json");
  try {
    export_report(report, ReportFormat::Csv, "/nonexistent/dir/out.csv");
    FAIL("no error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/out.csv") != std::string::npos);
  }
  std::istringstream bad("trial,seed\n1,2\n");
  CHECK_THROWS_AS(read_report_csv(bad), ParseError);
  std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_report_csv(short_row), ParseError);
}

TEST_CASE("summary line") {
  const Instance g = gen_g_star(GStarParams{8, 2, {1, 4}, 1});
  const auto report = run_experiment(g, basic(AlgorithmKind::IaHyp, 3, 3, 1000));
  const std::string line = summary_line(report);
  CHECK(line.find("success_rate=1") != std::string::npos);
  CHECK(line.find("optimum=72") != std::string::npos);
}
