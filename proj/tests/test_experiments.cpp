#include "ahprank/cli.hpp"
#include "ahprank/error.hpp"
#include "ahprank/experiments.hpp"
#include "ahprank/graph.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace ahprank;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run(std::vector<std::string> args) {
  args.insert(args.begin(), "ahp_rank");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  REQUIRE(code == 0);
  return out.str();
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n = 6;
  c.densities = {0.5};
  c.gammas = {0.1, 0.5};
  c.trials = 6;
  c.methods = {Method::IllsMwov, Method::Ills, Method::Ev, Method::Iwls};
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("edge counts for density") {
  CHECK(edges_for_density(7, 1.0) == 21);
  CHECK(edges_for_density(7, 0.5) == 11);
  CHECK(edges_for_density(7, 0.3) == 7);
  CHECK(edges_for_density(7, 6.0 / 21.0) == 6);
  CHECK(testing::error_code([] { edges_for_density(7, 0.2); }) == Errc::InfeasibleDensity);
  CHECK(testing::error_code([] { edges_for_density(7, 0.0); }) == Errc::InfeasibleDensity);
  CHECK(testing::error_code([] { edges_for_density(7, 1.5); }) == Errc::InfeasibleDensity);
}

TEST_CASE("generated instances are connected with the requested edge count") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const double rho = std::max(2.0 / n, rng.uniform(0.2, 1.0));
    const auto inst = generate_instance(n, rho, 0.3, rng);
    const auto g = build_comparison_graph(inst.pcm);
    CHECK(is_connected(g));
    CHECK(static_cast<int>(g.edges.size()) == edges_for_density(n, rho));
    CHECK(inst.truth.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
    const double spread = inst.truth.weights().maxCoeff() / inst.truth.weights().minCoeff();
    CHECK(spread <= 9.0 + 1e-9);
  }
  const auto full = generate_instance(7, 1.0, 0.2, rng);
  CHECK(full.pcm.complete());
  CHECK(full.pcm.comparison_count() == 21);
}

TEST_CASE("zero perturbation yields consistent instances") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = generate_instance(7, 0.5, 0.0, rng);
    const auto& w = inst.truth.weights();
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        if (inst.pcm(i, j) > 0.0) CHECK(inst.pcm(i, j) == doctest::Approx(w(i) / w(j)).epsilon(1e-12));
  }
}

TEST_CASE("perturbation statistics") {
  Rng rng(3);
  const double gamma = 0.3;
  std::vector<double> eta;
  while (eta.size() < 10000) {
    const auto inst = generate_instance(7, 1.0, gamma, rng);
    const auto& w = inst.truth.weights();
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) eta.push_back(std::log(inst.pcm(i, j)) - std::log(w(i) / w(j)));
  }
  const double count = static_cast<double>(eta.size());
  double mean = 0.0;
  for (double e : eta) mean += e;
  mean /= count;
  double var = 0.0;
  for (double e : eta) var += (e - mean) * (e - mean);
  const double stddev = std::sqrt(var / (count - 1));
  CHECK(std::abs(mean) <= 3.0 * gamma / std::sqrt(count));
  CHECK(std::abs(stddev / gamma - 1.0) <= 0.05);
}

TEST_CASE("generator is deterministic per seed") {
  Rng a(42), b(42), c(43);
  const auto x = generate_instance(7, 0.5, 0.2, a);
  const auto y = generate_instance(7, 0.5, 0.2, b);
  const auto z = generate_instance(7, 0.5, 0.2, c);
  CHECK(x.pcm.entries() == y.pcm.entries());
  CHECK(x.truth.weights() == y.truth.weights());
  CHECK(x.pcm.entries() != z.pcm.entries());
}

TEST_CASE("seed 42 instance matches the golden file") {
  const std::string golden_dir = AHPRANK_GOLDEN_DIR;
  CHECK(run({"gen", "--n", "7", "--rho", "0.5", "--gamma", "0.2", "--seed", "42"}) ==
        slurp(golden_dir + "/gen_seed42.csv"));
  const auto truth = std::filesystem::temp_directory_path() / "ahprank_gen_truth.csv";
  run({"gen", "--n", "7", "--rho", "0.5", "--gamma", "0.2", "--seed", "42", "--truth", truth.string()});
  CHECK(slurp(truth) == slurp(golden_dir + "/gen_seed42_truth.csv"));
  std::filesystem::remove(truth);
}

TEST_CASE("config JSON") {
  const auto c = ExperimentConfig::from_json(
      R"({"n": 6, "densities": [0.5], "gammas": [0.2], "trials": 3, "seed": 9, "methods": ["ills", "ev"], "threads": 2})");
  CHECK(c.n == 6);
  CHECK(c.densities == std::vector<double>{0.5});
  CHECK(c.trials == 3);
  CHECK(c.seed == 9);
  CHECK(c.methods == std::vector<Method>{Method::Ills, Method::Ev});
  CHECK(c.threads == 2);
  CHECK_NOTHROW(c.validate());

  CHECK(testing::error_code([] { ExperimentConfig::from_json(R"({"trails": 3})"); }) == Errc::InvalidArgument);
  CHECK(testing::error_code([] { ExperimentConfig::from_json("{"); }) == Errc::ParseError);

  ExperimentConfig bad;
  bad.densities = {0.2};
  CHECK(testing::error_code([&] { bad.validate(); }) == Errc::InfeasibleDensity);
  bad = {};
  bad.trials = 0;
  CHECK(testing::error_code([&] { bad.validate(); }) == Errc::InvalidArgument);
  bad = {};
  bad.gammas = {-0.1};
  CHECK(testing::error_code([&] { bad.validate(); }) == Errc::InvalidArgument);
}

TEST_CASE("sweep records and summaries") {
  const auto config = small_config();
  const auto result = run_sweep(config);
  REQUIRE(result.trials.size() == 12);
  for (const auto& t : result.trials) {
    CHECK(t.methods.size() == config.methods.size());
    for (const auto& m : t.methods) {
      CHECK(m.ok);
      CHECK(m.metrics.mvs >= 0.0);
    }
    CHECK(t.methods[0].provenance.has_value());
  }
  CHECK(result.summary.size() == 2 * config.methods.size());
  for (const auto& row : result.summary) CHECK(row.completed == 6);
  CHECK(result.pareto.size() == 2 * config.methods.size());

  // Summary means equal the record means.
  std::map<std::pair<double, int>, double> sums;
  for (const auto& t : result.trials)
    for (const auto& m : t.methods) sums[{t.gamma, static_cast<int>(m.method)}] += m.metrics.tds;
  for (const auto& row : result.summary)
    CHECK(row.tds_mean == doctest::Approx(sums[{row.gamma, static_cast<int>(row.method)}] / 6.0).epsilon(1e-12));
}

TEST_CASE("sweep output is byte-identical across runs and thread counts") {
  auto config = small_config();
  const auto one = run_sweep(config);
  config.threads = 4;
  const auto four = run_sweep(config);
  CHECK(trials_csv(one) == trials_csv(four));
  CHECK(summary_csv(one) == summary_csv(four));
  CHECK(pareto_csv(one) == pareto_csv(four));
  CHECK(instances_csv(one) == instances_csv(four));
  CHECK(trials_csv(one).rfind("cell,rho,gamma,trial,instance_seed,method,status,provenance,sigma,tau,mvs,tds,note\n", 0) ==
        0);
}

TEST_CASE("zero perturbation sweep has no violations") {
  auto config = small_config();
  config.gammas = {0.0};
  config.methods = {kAllMethods.begin(), kAllMethods.end()};
  for (const auto& row : run_sweep(config).summary) {
    CHECK(row.mvs_mean == 0.0);
    CHECK(row.failures == 0);
  }
}

TEST_CASE("violations grow with perturbation") {
  auto config = small_config();
  config.n = 7;
  config.gammas = {0.05, 0.2, 0.5, 1.0};
  config.trials = 30;
  config.threads = 0;
  const auto result = run_sweep(config);
  for (Method m : config.methods) {
    std::vector<double> means;
    for (const auto& row : result.summary)
      if (row.method == m) means.push_back(row.mvs_mean);
    REQUIRE(means.size() == 4);
    int drops = 0;
    for (size_t k = 1; k < means.size(); ++k)
      if (means[k] < means[k - 1]) ++drops;
    CHECK(drops <= 1);
    CHECK(means.back() > means.front());
  }
}

TEST_CASE("outputs are written to disk") {
  auto config = small_config();
  config.gammas = {0.2};
  const auto result = run_sweep(config);
  const auto dir = std::filesystem::temp_directory_path() / "ahprank_sweep_test";
  std::filesystem::remove_all(dir);
  write_sweep_outputs(result, dir, true);
  for (const char* name : {"trials.csv", "instances.csv", "summary.csv", "pareto.csv", "timings.csv", "pareto.svg"})
    CHECK(std::filesystem::exists(dir / name));
  CHECK(slurp(dir / "trials.csv") == trials_csv(result));
  CHECK(slurp(dir / "pareto.svg").rfind("<svg", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ambiguous cycle family") {
  const auto pcm = ambiguous_cycle_instance(0, 3);
  CHECK(pcm(0, 1) == 2.0);
  CHECK(pcm(3, 4) == 2.0);
  CHECK(pcm(1, 2) == 3.0);
  CHECK(pcm(6, 0) == 7.0);
  const auto report = check_uniqueness_conditions(build_dominance_graph(pcm));
  CHECK_FALSE(report.fast_path_eligible);
  CHECK(report.ambiguous_cycles.size() == 1);

  const auto suite = run_ambiguous_cycle_suite();
  REQUIRE(suite.trials.size() == 21);
  for (const auto& t : suite.trials) {
    REQUIRE(t.methods[0].method == Method::IllsMwov);
    CHECK(t.methods[0].provenance == OrdinalProvenance::ExactILP);
  }
}

TEST_CASE("fixture suite") {
  const auto checks = run_fixture_suite(AHPRANK_FIXTURE_DIR);
  std::map<std::string, bool> passed;
  for (const auto& c : checks) passed[c.name] = c.passed;
  CHECK(passed.at("csato.sigma_star"));
  CHECK(passed.at("csato.objective_constrained"));
  CHECK(passed.at("fig2.x32"));
  CHECK(passed.at("fig3a.fast_equals_exact"));
  CHECK(passed.at("fig1.unique"));

  const auto missing = run_fixture_suite("/nonexistent");
  CHECK_FALSE(missing.empty());
  for (const auto& c : missing) CHECK_FALSE(c.passed);
}
