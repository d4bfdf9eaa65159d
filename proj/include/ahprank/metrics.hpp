#pragma once

#include "ahprank/ordinal.hpp"
#include "ahprank/pcm.hpp"

#include <Eigen/Core>

#include <optional>

namespace ahprank {

/// Relative tolerance used to call two weights equal in the violation count.
inline constexpr double kWeightEqualityTolerance = 1e-9;

/// Ordinal violations over ordered compared pairs. A reversed strict
/// preference counts 1; a tie on one side only counts 1/2.
/// Throws Errc::NonPositiveWeights.
double compute_mvs(const IncompletePCM& pcm, const Eigen::VectorXd& w);

/// sum over ordered compared pairs of (a_ij - w_i / w_j)^2.
/// Throws Errc::NonPositiveWeights.
double compute_tds(const IncompletePCM& pcm, const Eigen::VectorXd& w);

/// |a_i / a_j - b_i / b_j| on compared pairs, 0 elsewhere.
Eigen::MatrixXd compute_delta(const IncompletePCM& pcm, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct MetricsReport {
  double sigma = 0.0;
  double tau = 0.0;
  double mvs = 0.0;
  double tds = 0.0;
  std::optional<Eigen::MatrixXd> delta;
};

/// sigma and tau are evaluated on the strict order induced by `w`.
MetricsReport compute_metrics(const IncompletePCM& pcm, const Eigen::VectorXd& w, double delta = kDefaultDelta);

}  // namespace ahprank
