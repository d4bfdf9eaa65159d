#pragma once

#include "ahprank/graph.hpp"
#include "ahprank/ordinal.hpp"
#include "ahprank/pcm.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace ahprank {

inline constexpr double kDefaultEpsilon = 1e-4;

/// Log least-squares problem with separation constraints y_i >= y_j + epsilon.
struct LogLSProblem {
  ComparisonGraph graph;
  std::vector<std::pair<int, int>> constraints;
  double epsilon = kDefaultEpsilon;
};

/// One constraint (i, j) per x_ij = 1.
LogLSProblem make_log_ls_problem(const IncompletePCM& pcm, const PreferenceRelation& x, double epsilon);

/// sum over compared pairs {i, j} of (ln a_ij - y_i + y_j)^2, each pair once.
/// This equals half of the ordered double sum over i and j in N_i.
double log_ls_objective(const ComparisonGraph& g, const Eigen::VectorXd& y);
/// Gradient of log_ls_objective: 2 (L y - r).
Eigen::VectorXd log_ls_gradient(const ComparisonGraph& g, const Eigen::VectorXd& y);

struct IllsSolution {
  PriorityVector weights;
  /// Log-weights with y[gauge] = 0.
  Eigen::VectorXd y;
  double objective = 0.0;
  /// ||L y - P 1||_inf
  double residual = 0.0;
};

/// Unconstrained incomplete LLS: solves L y = P 1 with y[gauge] = 0 through the
/// reduced (n-1)x(n-1) positive definite system. gauge < 0 means the last index.
IllsSolution solve_ills(const ComparisonGraph& g, int gauge = -1);

struct KKTCertificate {
  /// Multiplier matrix, nonzero only on constraint pairs.
  Eigen::MatrixXd lambda;
  /// ||L y - 1/2 (Lambda - Lambda^T) 1 - r||_inf
  double stationarity = 0.0;
  /// max over constraints |Lambda_ij (y_j - y_i + epsilon)|
  double complementarity = 0.0;
  /// max over constraints of max(0, y_j + epsilon - y_i)
  double primal_feasibility = 0.0;
  /// max(-min Lambda on constraints, max |Lambda| off constraints)
  double dual_feasibility = 0.0;

  bool accepted(double tolerance = 1e-8) const {
    return stationarity <= tolerance && complementarity <= tolerance && primal_feasibility <= tolerance &&
           dual_feasibility <= tolerance;
  }
};

KKTCertificate verify_kkt(const LogLSProblem& problem, const Eigen::VectorXd& y, const Eigen::MatrixXd& lambda);

struct CardinalOptions {
  int gauge = -1;
  int max_iterations = 0;  // 0: 50 * (n + constraints) + 100
};

struct ConstrainedSolution {
  PriorityVector weights;
  Eigen::VectorXd y;
  double objective = 0.0;
  KKTCertificate certificate;
  int iterations = 0;
  /// Constraints active at the solution (working set).
  std::vector<std::pair<int, int>> active;
};

/// Primal active-set method on the gauge-fixed problem. Starts from the
/// unconstrained optimum when it is feasible, from a chain-height point
/// otherwise. Throws Errc::Disconnected, Errc::Infeasible, Errc::MaxIterations.
ConstrainedSolution solve_constrained(const LogLSProblem& problem, const CardinalOptions& options = {});

struct MwovOptions {
  double epsilon = kDefaultEpsilon;
  OrdinalOptions ordinal{};
  CardinalOptions cardinal{};
};

struct MwovResult {
  OrdinalPreferenceMatrix ordinal;
  OrdinalObjective ordinal_objective;
  ConstrainedSolution cardinal;
};

/// Two-stage ranking: ordinal stage, then log least squares constrained to it.
MwovResult solve_ills_mwov(const IncompletePCM& pcm, const MwovOptions& options = {});

}  // namespace ahprank
