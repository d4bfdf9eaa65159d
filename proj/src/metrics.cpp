#include "ahprank/metrics.hpp"

#include "ahprank/error.hpp"

#include <cmath>
#include <string>

namespace ahprank {

namespace {

void require_positive(const IncompletePCM& pcm, const Eigen::VectorXd& w) {
  if (w.size() != pcm.size()) throw Error(Errc::InvalidArgument, "weight vector length does not match matrix");
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w(i) > 0.0) || !std::isfinite(w(i))) {
      throw Error(Errc::NonPositiveWeights, "weight " + std::to_string(i + 1) + " is " + format_number(w(i)));
    }
  }
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kWeightEqualityTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double compute_mvs(const IncompletePCM& pcm, const Eigen::VectorXd& w) {
  require_positive(pcm, w);
  double total = 0.0;
  for (int i = 0; i < pcm.size(); ++i) {
    for (int j = 0; j < pcm.size(); ++j) {
      if (!pcm.has(i, j)) continue;
      const bool equal = nearly_equal(w(i), w(j));
      const bool tie = pcm.is_tie(i, j);
      if (!equal && w(i) > w(j) && pcm(i, j) < 1.0) {
        total += 1.0;
      } else if (equal != tie) {
        total += 0.5;
      }
    }
  }
  return total;
}

double compute_tds(const IncompletePCM& pcm, const Eigen::VectorXd& w) {
  require_positive(pcm, w);
  double total = 0.0;
  for (int i = 0; i < pcm.size(); ++i) {
    for (int j = 0; j < pcm.size(); ++j) {
      if (!pcm.has(i, j)) continue;
      const double d = pcm(i, j) - w(i) / w(j);
      total += d * d;
    }
  }
  return total;
}

Eigen::MatrixXd compute_delta(const IncompletePCM& pcm, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  require_positive(pcm, a);
  require_positive(pcm, b);
  const int n = pcm.size();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pcm.has(i, j)) delta(i, j) = std::abs(a(i) / a(j) - b(i) / b(j));
  return delta;
}

MetricsReport compute_metrics(const IncompletePCM& pcm, const Eigen::VectorXd& w, double delta) {
  MetricsReport report;
  report.mvs = compute_mvs(pcm, w);
  report.tds = compute_tds(pcm, w);
  const auto objective = evaluate_objective(pcm, ordinal_from_weights(pcm, w), delta);
  report.sigma = objective.sigma;
  report.tau = objective.tau;
  return report;
}

}  // namespace ahprank
