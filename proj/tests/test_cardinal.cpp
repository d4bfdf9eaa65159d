#include "ahprank/cardinal.hpp"
#include "ahprank/error.hpp"
#include "ahprank/graph.hpp"
#include "ahprank/ordinal.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include <cmath>

using namespace ahprank;

namespace {

// Random total order; its relation holds every pair, compared or not.
PreferenceRelation random_total_order(int n, Rng& rng) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  PreferenceRelation x(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) x.set(order[a], order[b]);
  return x;
}

struct RandomCase {
  IncompletePCM pcm;
  LogLSProblem problem;
};

RandomCase random_case(Rng& rng, int max_n, bool total_order) {
  const int n = 3 + static_cast<int>(rng.below(max_n - 2));
  auto pcm = oracle::random_pcm(n, rng.uniform(0.3, 1.0), rng.uniform(0.1, 1.0), 0.1, rng);
  const auto x = total_order ? random_total_order(n, rng) : solve_ordinal(pcm).x;
  auto problem = make_log_ls_problem(pcm, x, rng.uniform(1e-4, 0.2));
  return {std::move(pcm), std::move(problem)};
}

}  // namespace

TEST_CASE("ILLS recovers consistent weights on any connected pattern") {
  const Eigen::Vector3d w(0.5, 0.3, 0.2);
  Eigen::MatrixXi path = Eigen::MatrixXi::Zero(3, 3);
  path(0, 1) = path(1, 2) = 1;
  for (const auto& pcm : {testing::consistent(w, path), testing::complete_consistent(w)}) {
    const auto s = solve_ills(build_comparison_graph(pcm));
    CHECK(((s.weights.weights() - w).array() / w.array()).abs().maxCoeff() <= 1e-10);
    CHECK(s.residual <= 1e-10);
    CHECK(s.objective <= 1e-20);
    CHECK(s.y(2) == 0.0);
  }
}

TEST_CASE("ILLS on the csato matrix") {
  const auto s = solve_ills(build_comparison_graph(testing::fixture("csato.csv")));
  CHECK(s.weights[0] < s.weights[1]);
  CHECK(std::abs(s.objective - 1.6963) <= 1e-3);
  CHECK(std::abs(s.objective - 1.69629329404) <= 1e-10);
  CHECK(s.residual <= 1e-10);
}

TEST_CASE("ILLS equals the spanning-tree mean") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 3;
    const auto pcm = oracle::random_pcm(n, rng.uniform(0.3, 1.0), 0.7, 0.0, rng);
    const auto s = solve_ills(build_comparison_graph(pcm));
    CHECK((s.y - oracle::spanning_tree_mean(pcm)).lpNorm<Eigen::Infinity>() <= 1e-9);
  }
}

TEST_CASE("objective and gradient") {
  const auto g = build_comparison_graph(testing::fixture("csato.csv"));
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(7);
  CHECK(log_ls_objective(g, zero) == doctest::Approx(11.0 * std::pow(std::log(2.0), 2)).epsilon(1e-14));
  CHECK(log_ls_objective(g, Eigen::VectorXd::Constant(7, 3.5)) == doctest::Approx(log_ls_objective(g, zero)).epsilon(1e-14));

  Rng rng(4);
  for (const char* name : {"csato.csv", "fig1_ambiguous_cycle.csv", "fig2_shared_edge.csv", "fig3a_cycle_with_tie.csv"}) {
    const auto gf = build_comparison_graph(testing::fixture(name));
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd y(gf.n);
      for (int i = 0; i < gf.n; ++i) y(i) = rng.uniform(-3.0, 3.0);
      const auto fd = oracle::central_difference([&](const Eigen::VectorXd& v) { return log_ls_objective(gf, v); }, y, 1e-6);
      const auto an = log_ls_gradient(gf, y);
      CHECK((an - fd).lpNorm<Eigen::Infinity>() <= 1e-5 * std::max(1.0, an.lpNorm<Eigen::Infinity>()));
    }
  }
}

TEST_CASE("constrained solution on the csato matrix") {
  const auto pcm = testing::fixture("csato.csv");
  MwovOptions options;
  options.epsilon = 0.1;
  const auto res = solve_ills_mwov(pcm, options);
  const double ills = solve_ills(build_comparison_graph(pcm)).objective;
  CHECK(std::abs(res.cardinal.objective - 1.72317594492) <= 1e-10);
  CHECK(std::abs(res.cardinal.objective - 1.7232) <= 1e-3);
  CHECK(std::abs((res.cardinal.objective / ills - 1.0) * 100 - 1.6) <= 0.1);
  CHECK(res.cardinal.weights[0] > res.cardinal.weights[1]);
  CHECK(res.cardinal.certificate.accepted());
  CHECK(res.ordinal_objective.sigma == doctest::Approx(11.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("no constraints reduces to ILLS") {
  const auto pcm = testing::fixture("fig2_shared_edge.csv");
  const auto problem = make_log_ls_problem(pcm, PreferenceRelation(4), 0.1);
  CHECK(problem.constraints.empty());
  const auto c = solve_constrained(problem);
  const auto u = solve_ills(problem.graph);
  CHECK((c.weights.weights() - u.weights.weights()).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK(c.certificate.accepted());
  CHECK(c.active.empty());
}

TEST_CASE("KKT certificate on random problems") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto problem = random_case(rng, 10, trial % 2 == 1).problem;
    const auto s = solve_constrained(problem);
    CHECK(s.certificate.accepted(1e-8));
    for (auto [i, j] : problem.constraints) CHECK(s.y(i) >= s.y(j) + problem.epsilon - 1e-12);
    const double ills = solve_ills(problem.graph).objective;
    CHECK(s.objective >= ills - 1e-12);
    if (s.active.empty()) CHECK(s.objective == doctest::Approx(ills).epsilon(1e-10));
    else CHECK(s.objective > ills);
    // Constrained pairs never come out tied or reversed.
    const Eigen::VectorXd& w = s.weights.weights();
    for (auto [i, j] : problem.constraints) CHECK(w(i) > w(j));
  }
}

TEST_CASE("constrained optimum matches the dual projected-gradient oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [pcm, problem] = random_case(rng, 6, trial % 2 == 1);
    const auto s = solve_constrained(problem);
    const double dual = oracle::dual_projected_gradient(pcm, problem.constraints, problem.epsilon, 100, 1000 + trial);
    CHECK(std::abs(s.objective - dual) <= 1e-6);
  }
}

TEST_CASE("gauge choice does not change the weights") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto problem = random_case(rng, 8, true).problem;
    const auto last = solve_constrained(problem);
    CardinalOptions first;
    first.gauge = 0;
    const auto zero = solve_constrained(problem, first);
    CHECK(zero.y(0) == 0.0);
    CHECK((last.weights.weights() - zero.weights.weights()).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("verify_kkt detects perturbations") {
  const auto pcm = testing::fixture("csato.csv");
  const auto problem = make_log_ls_problem(pcm, solve_ordinal(pcm).x, 0.1);
  const auto s = solve_constrained(problem);
  CHECK(s.certificate.accepted());
  for (int i = 0; i < 7; ++i) {
    Eigen::VectorXd y = s.y;
    y(i) += 0.1;
    CHECK(verify_kkt(problem, y, s.certificate.lambda).stationarity > 1e-3);
  }

  const auto loose = make_log_ls_problem(pcm, PreferenceRelation(7), 0.1);
  const auto u = solve_ills(loose.graph);
  CHECK(verify_kkt(loose, u.y, Eigen::MatrixXd::Zero(7, 7)).accepted());
}

TEST_CASE("multipliers live on the constraint support") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto problem = random_case(rng, 7, true).problem;
    const auto s = solve_constrained(problem);
    Eigen::MatrixXi support = Eigen::MatrixXi::Zero(problem.graph.n, problem.graph.n);
    for (auto [i, j] : problem.constraints) support(i, j) = 1;
    for (int i = 0; i < problem.graph.n; ++i)
      for (int j = 0; j < problem.graph.n; ++j) {
        if (!support(i, j)) CHECK(s.certificate.lambda(i, j) == 0.0);
        else CHECK(s.certificate.lambda(i, j) >= 0.0);
      }
  }
}

TEST_CASE("cardinal errors") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(0, 1) = 2;
  a(1, 0) = 0.5;
  a(2, 3) = 3;
  a(3, 2) = 1.0 / 3;
  const auto split = IncompletePCM::validate(a);
  CHECK(testing::error_code([&] { solve_ills(build_comparison_graph(split)); }) == Errc::Disconnected);
  CHECK(testing::error_code([&] { solve_constrained(make_log_ls_problem(split, PreferenceRelation(4), 0.1)); }) ==
        Errc::Disconnected);

  const auto pcm = testing::fixture("fig2_shared_edge.csv");
  auto cyclic = make_log_ls_problem(pcm, PreferenceRelation(4), 0.1);
  cyclic.constraints = {{0, 1}, {1, 0}};
  CHECK(testing::error_code([&] { solve_constrained(cyclic); }) == Errc::Infeasible);
}
