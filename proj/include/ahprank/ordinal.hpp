#pragma once

#include "ahprank/graph.hpp"
#include "ahprank/pcm.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace ahprank {

inline constexpr double kDefaultDelta = 1e-4;

/// Boolean n x n relation; (i, j) set means "i is preferred to j".
class PreferenceRelation {
 public:
  PreferenceRelation() = default;
  explicit PreferenceRelation(int n) : n_(n), bits_(static_cast<size_t>(n) * n, 0) {}

  int size() const noexcept { return n_; }
  bool operator()(int i, int j) const { return bits_[static_cast<size_t>(i) * n_ + j] != 0; }
  void set(int i, int j, bool value = true) { bits_[static_cast<size_t>(i) * n_ + j] = value ? 1 : 0; }
  int count() const;

  bool irreflexive() const;
  bool asymmetric() const;
  bool transitive() const;
  bool is_strict_partial_order() const { return irreflexive() && asymmetric() && transitive(); }

  /// Row-major "0"/"1" string, the key for lexicographic tie-breaking.
  std::string bit_string() const;

  friend bool operator==(const PreferenceRelation&, const PreferenceRelation&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class OrdinalProvenance { FastPath, ExactILP };
std::string_view to_string(OrdinalProvenance p) noexcept;

struct OrdinalPreferenceMatrix {
  PreferenceRelation x;
  OrdinalProvenance provenance = OrdinalProvenance::ExactILP;
  bool uniqueness_certificate = false;
  /// Distinct optimal restrictions to the compared pairs (1 when unique).
  /// Only meaningful for the exact solver; saturates at kOptimumCountCap.
  long optimum_count = 1;
  bool timed_out = false;
  long nodes_explored = 0;
};

inline constexpr long kOptimumCountCap = 1'000'000;

struct OrdinalObjective {
  double sigma = 0.0;
  double tau = 0.0;
  double delta = kDefaultDelta;

  double value() const noexcept { return sigma + tau; }
};

struct OrdinalOptions {
  double delta = kDefaultDelta;
  std::chrono::milliseconds budget{10000};
  std::size_t cycle_cap = kDefaultCycleCap;
};

/// sigma = sum over compared pairs of ln(a_ij)(x_ij - x_ji);
/// tau = -delta * (number of set variables on tie pairs).
OrdinalObjective evaluate_objective(const IncompletePCM& pcm, const PreferenceRelation& x, double delta);

/// Upper limit min_{a_ij > 1} ln(a_ij) / |E| under which the tie penalty
/// cannot trade off against sigma. +inf when the matrix holds only ties.
double negligible_delta_bound(const IncompletePCM& pcm);

/**
 * Exact maximizer of sigma + tau over strict partial orders.
 *
 * Depth-first branch-and-bound over the compared pairs, each decided as
 * i<j, j<i or unrelated, with incremental transitive closure. The bound adds
 * |ln a_ij| for every undecided pair. Unrelated non-compared pairs are only
 * set through transitivity, so the returned relation is the transitive
 * closure of its restriction to compared pairs. Among equal optima the
 * lexicographically smallest bit string is returned.
 */
OrdinalPreferenceMatrix solve_exact_ilp(const IncompletePCM& pcm, const OrdinalOptions& options = {});

/// Cycle-breaking construction for dominance graphs with edge-disjoint,
/// non-ambiguous cycles. Throws Errc::NotEligible otherwise.
OrdinalPreferenceMatrix solve_fast_path(const DominanceGraph& gd, const IncompletePCM& pcm, double delta = kDefaultDelta);

/// Fast path when the uniqueness conditions hold, exact search otherwise.
OrdinalPreferenceMatrix solve_ordinal(const IncompletePCM& pcm, const OrdinalOptions& options = {});

/// x_ij = 1 iff w_i exceeds w_j by more than a relative 1e-9.
PreferenceRelation ordinal_from_weights(const IncompletePCM& pcm, const Eigen::VectorXd& weights);

/// Closure by repeated Adj <- sign(Adj + Adj^2), n - 1 times.
PreferenceRelation boolean_square_closure(PreferenceRelation adj);

std::string relation_to_csv(const PreferenceRelation& x);

}  // namespace ahprank
