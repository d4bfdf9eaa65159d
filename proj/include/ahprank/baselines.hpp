#pragma once

#include "ahprank/cardinal.hpp"
#include "ahprank/ordinal.hpp"
#include "ahprank/pcm.hpp"

#include <Eigen/Core>

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ahprank {

enum class Method { IllsMwov, Ills, Ev, Idls, Iwls };

inline constexpr std::array<Method, 5> kAllMethods{Method::IllsMwov, Method::Ills, Method::Ev, Method::Idls,
                                                   Method::Iwls};

std::string_view to_string(Method m) noexcept;
Method method_from_string(std::string_view s);

/// Weights of one prioritization method.
///
/// `weights` always sums to one. IWLS may return non-positive components;
/// those are reported as is and `positive` is false.
struct BaselineResult {
  Method method = Method::Ills;
  Eigen::VectorXd weights;
  bool positive = true;
  /// Method-specific numbers (iterations, residuals, restarts, ...).
  std::map<std::string, double> diagnostics;
  /// Set for ILLS-MWOV only.
  std::optional<OrdinalProvenance> provenance;

  /// Throws Errc::NonPositiveWeights when `positive` is false.
  PriorityVector priority() const { return PriorityVector::from_weights(weights); }
};

struct EvOptions {
  int max_iterations = 100000;
  double tolerance = 1e-12;
};

/// Perron vector of D^-1 (A - I) by power iteration on the shifted matrix
/// D^-1 (A - I) + I, which shares its eigenvectors and is aperiodic.
BaselineResult solve_ev(const IncompletePCM& pcm, const EvOptions& options = {});

struct IdlsOptions {
  int restarts = 50;
  std::uint64_t seed = 0x1D15;
  /// Standard deviation of the log-normal jitter applied to restart points.
  double jitter = 0.5;
  double gradient_tolerance = 1e-8;
  int max_iterations = 20000;
};

/// sum over ordered compared pairs of (a_ij - w_i / w_j)^2.
double idls_objective(const IncompletePCM& pcm, const Eigen::VectorXd& w);

/// Multi-start gradient descent in log-parameterization with Armijo
/// backtracking. Restart 0 starts at the ILLS solution. Local optimum only.
BaselineResult solve_idls(const IncompletePCM& pcm, const IdlsOptions& options = {});

/// Exact solution of the sum-constrained weighted least squares problem via
/// its linear KKT system.
BaselineResult solve_iwls(const IncompletePCM& pcm);

BaselineResult solve_ills_baseline(const IncompletePCM& pcm);

struct MethodOptions {
  double epsilon = kDefaultEpsilon;
  double delta = kDefaultDelta;
  std::chrono::milliseconds ordinal_budget{10000};
  IdlsOptions idls{};
  EvOptions ev{};
};

BaselineResult run_method(Method method, const IncompletePCM& pcm, const MethodOptions& options = {});

}  // namespace ahprank
