#include "ahprank/baselines.hpp"
#include "ahprank/error.hpp"
#include "ahprank/metrics.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include <cmath>

using namespace ahprank;

namespace {

IncompletePCM two_by_two(double a) {
  Eigen::MatrixXd m(2, 2);
  m << 1, a, 1.0 / a, 1;
  return IncompletePCM::validate(m);
}

double max_abs(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_CASE("method names") {
  for (Method m : kAllMethods) CHECK(method_from_string(to_string(m)) == m);
  CHECK(method_from_string("mwov") == Method::IllsMwov);
  CHECK(method_from_string("Ev") == Method::Ev);
  CHECK(to_string(Method::IllsMwov) == "ILLS-MWOV");
  CHECK(testing::error_code([] { method_from_string("ahp"); }) == Errc::InvalidArgument);
}

TEST_CASE("two-alternative closed forms") {
  const auto ev = solve_ev(two_by_two(4.0));
  CHECK(max_abs(ev.weights, Eigen::Vector2d(0.8, 0.2)) <= 1e-12);
  CHECK(ev.diagnostics.at("eigenvalue") == doctest::Approx(1.0).epsilon(1e-12));

  const auto iwls = solve_iwls(two_by_two(3.0));
  CHECK(max_abs(iwls.weights, Eigen::Vector2d(0.75, 0.25)) <= 1e-12);
  CHECK(iwls.positive);

  const auto idls = solve_idls(two_by_two(2.0));
  CHECK(max_abs(idls.weights, Eigen::Vector2d(2.0 / 3.0, 1.0 / 3.0)) <= 1e-9);
  CHECK(idls.diagnostics.at("objective") <= 1e-18);
}

TEST_CASE("all methods agree on complete consistent matrices") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.uniform(1.0, 9.0);
    w /= w.sum();
    const auto pcm = testing::complete_consistent(w);
    for (Method m : kAllMethods) {
      const auto r = run_method(m, pcm);
      CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(max_abs(r.weights, w) <= 1e-6);
    }
    CHECK(max_abs(solve_ev(pcm).weights, w) <= 1e-9);
    CHECK(solve_iwls(pcm).diagnostics.at("objective") <= 1e-14);
    CHECK(idls_objective(pcm, w) <= 1e-24);
  }
}

TEST_CASE("EV matches a dense eigendecomposition") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const auto pcm = oracle::random_pcm(n, rng.uniform(0.3, 1.0), rng.uniform(0.1, 1.0), 0.1, rng);
    const auto ev = solve_ev(pcm);
    CHECK(ev.positive);
    CHECK(ev.diagnostics.at("eigen_residual") <= 1e-12);
    CHECK(max_abs(ev.weights, oracle::dense_ev(pcm)) <= 1e-9);
  }
}

TEST_CASE("IWLS solves its KKT system") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const auto pcm = oracle::random_pcm(n, rng.uniform(0.3, 1.0), rng.uniform(0.1, 1.0), 0.1, rng);
    const auto r = solve_iwls(pcm);
    CHECK(r.diagnostics.at("kkt_residual") <= 1e-10);
    CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.positive == (r.weights.array() > 0.0).all());
  }
}

TEST_CASE("IDLS never ends above its warm start") {
  Rng rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const auto pcm = oracle::random_pcm(n, rng.uniform(0.3, 1.0), rng.uniform(0.1, 1.0), 0.0, rng);
    const auto ills = solve_ills_baseline(pcm);
    const auto idls = solve_idls(pcm, {.restarts = 10});
    CHECK(idls_objective(pcm, idls.weights) <= idls_objective(pcm, ills.weights) + 1e-12);
    CHECK(idls.diagnostics.at("gradient_norm") <= 1e-8);
    CHECK(idls.diagnostics.at("nonconvex") == 1.0);
  }
}

TEST_CASE("IDLS objective depends only on ratios") {
  const auto pcm = testing::fixture("csato.csv");
  Rng rng(16);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd w(7);
    for (int i = 0; i < 7; ++i) w(i) = rng.uniform(0.5, 2.0);
    CHECK(idls_objective(pcm, w) == doctest::Approx(idls_objective(pcm, 3.0 * w)).epsilon(1e-13));
  }
}

TEST_CASE("csato baselines") {
  const auto pcm = testing::fixture("csato.csv");
  const auto idls = solve_idls(pcm);
  const double best = idls_objective(pcm, idls.weights);
  for (Method m : kAllMethods) {
    const auto r = run_method(m, pcm);
    CHECK(r.positive);
    CHECK(best <= idls_objective(pcm, r.weights) + 1e-9);
    CHECK(compute_tds(pcm, idls.weights) <= compute_tds(pcm, r.weights) + 1e-9);
  }
  const auto iwls = solve_iwls(pcm);
  CHECK(iwls.diagnostics.at("kkt_residual") <= 1e-10);
}

TEST_CASE("run_method reports stage diagnostics for ILLS-MWOV") {
  const auto pcm = testing::fixture("csato.csv");
  const auto r = run_method(Method::IllsMwov, pcm, {.epsilon = 0.1});
  REQUIRE(r.provenance.has_value());
  CHECK(*r.provenance == OrdinalProvenance::FastPath);
  CHECK(r.diagnostics.at("objective") == doctest::Approx(1.72317594492).epsilon(1e-10));
  CHECK(r.diagnostics.at("unique") == 1.0);
  CHECK(r.diagnostics.at("kkt_stationarity") <= 1e-8);
}

TEST_CASE("baselines reject disconnected input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(0, 1) = 2;
  a(1, 0) = 0.5;
  a(2, 3) = 3;
  a(3, 2) = 1.0 / 3;
  const auto split = IncompletePCM::validate(a);
  for (Method m : kAllMethods) CHECK(testing::error_code([&] { run_method(m, split); }) == Errc::Disconnected);
  CHECK(testing::error_code([&] { solve_idls(two_by_two(2.0), {.restarts = 0}); }) == Errc::InvalidArgument);
}
