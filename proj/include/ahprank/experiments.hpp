#pragma once

#include "ahprank/baselines.hpp"
#include "ahprank/metrics.hpp"
#include "ahprank/pcm.hpp"
#include "ahprank/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ahprank {

struct GeneratedInstance {
  IncompletePCM pcm;
  /// Nominal weights, sum-one.
  PriorityVector truth;
};

/// ceil(rho * n(n-1)/2). Throws Errc::InfeasibleDensity when rho is outside
/// (0, 1] or the count is below n - 1.
int edges_for_density(int n, double rho);

/**
 * Random connected instance.
 *
 * Draw order: nominal log-uniform weights on [1, 9], a Pruefer sequence for
 * the spanning tree, a partial shuffle of the remaining pairs, then one
 * normal perturbation per edge in (i < j) order. a_ij = (w_i / w_j) e^eta
 * for i < j and a_ji = 1 / a_ij.
 */
GeneratedInstance generate_instance(int n, double rho, double gamma, Rng& rng);

struct ExperimentConfig {
  int n = 7;
  std::vector<double> densities{0.3, 0.5, 0.7};
  std::vector<double> gammas{0.1, 0.2, 0.5};
  int trials = 100;
  double epsilon = kDefaultEpsilon;
  double delta = kDefaultDelta;
  std::uint64_t seed = 42;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  /// 0: AHP_RANK_THREADS, else hardware concurrency.
  int threads = 0;
  bool svg = false;

  /// Keys as above; unknown keys are rejected. Throws Errc::ParseError or
  /// Errc::InvalidArgument.
  static ExperimentConfig from_json(std::string_view text);
  /// Throws Errc::InvalidArgument or Errc::InfeasibleDensity.
  void validate() const;
};

struct MethodRecord {
  Method method = Method::Ills;
  bool ok = false;
  /// Error text when !ok.
  std::string note;
  MetricsReport metrics;
  std::optional<OrdinalProvenance> provenance;
  double seconds = 0.0;
};

struct TrialRecord {
  int cell = 0;
  double rho = 0.0;
  double gamma = 0.0;
  int trial = 0;
  std::uint64_t instance_seed = 0;
  Eigen::VectorXd truth;
  std::vector<MethodRecord> methods;
};

struct SummaryRow {
  double rho = 0.0;
  double gamma = 0.0;
  Method method = Method::Ills;
  int completed = 0;
  int failures = 0;
  double sigma_mean = 0.0, sigma_std = 0.0;
  double mvs_mean = 0.0, mvs_std = 0.0;
  double tds_mean = 0.0, tds_std = 0.0;
};

struct ParetoRow {
  double gamma = 0.0;
  Method method = Method::Ills;
  double mvs_mean = 0.0;
  double tds_mean = 0.0;
};

struct SweepResult {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;
  std::vector<ParetoRow> pareto;
};

/// Worker count from AHP_RANK_THREADS, falling back to hardware concurrency.
int default_thread_count();

/// Runs every enabled method on every (rho, gamma, trial). Trial seeds are
/// derive_seed(seed, {cell, trial}). Solver errors become record notes.
SweepResult run_sweep(const ExperimentConfig& config);

/// Aggregates completed records per (rho, gamma, method), sample std.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& trials, const std::vector<Method>& methods);
std::vector<ParetoRow> pareto_front(const std::vector<SummaryRow>& summary);

std::string trials_csv(const SweepResult& result);
std::string instances_csv(const SweepResult& result);
std::string summary_csv(const SweepResult& result);
std::string pareto_csv(const SweepResult& result);
std::string timings_csv(const SweepResult& result);
/// Mean TDs against mean MVs, one marker per method and gamma.
std::string pareto_svg(const SweepResult& result);

/// Writes trials.csv, instances.csv, summary.csv, pareto.csv, timings.csv and,
/// when requested, pareto.svg.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir, bool svg);

/// Seven-cycle 1 > 2 > ... > 7 > 1 with ratio 2 on the edges `low_a` and
/// `low_b` (edge k joins k and k+1 mod 7) and 3..7 on the others in
/// increasing edge order.
IncompletePCM ambiguous_cycle_instance(int low_a, int low_b);

/// All 21 placements of the two minimum-ratio edges, every method. The
/// records form one cell with rho = 1/3 (the cycle density) and gamma = 0.
SweepResult run_ambiguous_cycle_suite(const MethodOptions& options = {});

struct FixtureCheck {
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
};

/// Reference checks on the matrices in `dir` (csato.csv, fig1_ambiguous_cycle.csv,
/// fig2_shared_edge.csv, fig3a_cycle_with_tie.csv). Missing files and solver
/// errors become failed entries.
std::vector<FixtureCheck> run_fixture_suite(const std::filesystem::path& dir);

}  // namespace ahprank
