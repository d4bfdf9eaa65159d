#include "ahprank/baselines.hpp"

#include "ahprank/error.hpp"
#include "ahprank/graph.hpp"
#include "ahprank/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace ahprank {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::IllsMwov: return "ILLS-MWOV";
    case Method::Ills: return "ILLS";
    case Method::Ev: return "EV";
    case Method::Idls: return "IDLS";
    case Method::Iwls: return "IWLS";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "ills-mwov" || lower == "mwov") return Method::IllsMwov;
  if (lower == "ills") return Method::Ills;
  if (lower == "ev") return Method::Ev;
  if (lower == "idls") return Method::Idls;
  if (lower == "iwls") return Method::Iwls;
  throw Error(Errc::InvalidArgument, "unknown method '" + std::string(s) + "'");
}

namespace {

void require_connected(const IncompletePCM& pcm) {
  if (!is_connected(build_comparison_graph(pcm))) throw Error(Errc::Disconnected, "comparison graph is not connected");
}

struct OrderedPair {
  int i;
  int j;
  double a;
};

std::vector<OrderedPair> ordered_pairs(const IncompletePCM& pcm) {
  std::vector<OrderedPair> out;
  for (int i = 0; i < pcm.size(); ++i)
    for (int j = 0; j < pcm.size(); ++j)
      if (pcm.has(i, j)) out.push_back({i, j, pcm(i, j)});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

BaselineResult solve_ev(const IncompletePCM& pcm, const EvOptions& options) {
  require_connected(pcm);
  const int n = pcm.size();
  Eigen::MatrixXd m = pcm.entries() - Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    int degree = 0;
    for (int j = 0; j < n; ++j)
      if (pcm.has(i, j)) ++degree;
    m.row(i) /= degree;
  }
  const Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    const Eigen::VectorXd mv = m * v;
    lambda = mv.sum() / v.sum();
    residual = (mv - lambda * v).lpNorm<Eigen::Infinity>();
    if (residual <= options.tolerance) break;
    v = shifted * v;
    v /= v.sum();
  }
  if (residual > options.tolerance) {
    throw Error(Errc::NoConvergence, "power iteration did not reach residual " + format_number(options.tolerance));
  }
  BaselineResult result;
  result.method = Method::Ev;
  result.weights = v / v.sum();
  result.positive = (result.weights.array() > 0.0).all();
  result.diagnostics = {{"iterations", iteration}, {"eigenvalue", lambda}, {"eigen_residual", residual}};
  return result;
}

// ---------------------------------------------------------------------------

double idls_objective(const IncompletePCM& pcm, const Eigen::VectorXd& w) {
  double total = 0.0;
  for (const auto& p : ordered_pairs(pcm)) {
    const double d = p.a - w(p.i) / w(p.j);
    total += d * d;
  }
  return total;
}

namespace {

struct LocalResult {
  Eigen::VectorXd u;
  double objective = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

class IdlsProblem {
 public:
  explicit IdlsProblem(const IncompletePCM& pcm) : pairs_(ordered_pairs(pcm)), n_(pcm.size()) {}

  double value(const Eigen::VectorXd& u) const {
    double total = 0.0;
    for (const auto& p : pairs_) {
      const double d = p.a - std::exp(u(p.i) - u(p.j));
      total += d * d;
    }
    return total;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n_);
    for (const auto& p : pairs_) {
      const double ratio = std::exp(u(p.i) - u(p.j));
      const double c = 2.0 * (ratio - p.a) * ratio;
      g(p.i) += c;
      g(p.j) -= c;
    }
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& u) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& p : pairs_) {
      const double ratio = std::exp(u(p.i) - u(p.j));
      const double c = 2.0 * ratio * (2.0 * ratio - p.a);
      h(p.i, p.i) += c;
      h(p.j, p.j) += c;
      h(p.i, p.j) -= c;
      h(p.j, p.i) -= c;
    }
    return h;
  }

  // Gradient descent with Barzilai-Borwein trial steps and Armijo
  // backtracking, then Newton steps once the gradient is small. Iterates stay
  // on the mean-zero slice (the gradient is orthogonal to the all-ones
  // direction).
  LocalResult descend(Eigen::VectorXd u, double tolerance, int max_iterations) const {
    u.array() -= u.mean();
    LocalResult r;
    double f = value(u);
    Eigen::VectorXd g = gradient(u);
    double step = 1.0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
    int it = 0;
    while (it < max_iterations && g.lpNorm<Eigen::Infinity>() > tolerance) {
      if (g.lpNorm<Eigen::Infinity>() <= kNewtonThreshold && newton(u, f, g, tolerance, it, max_iterations)) break;
      const double gg = g.squaredNorm();
      double t = step;
      Eigen::VectorXd candidate;
      double fc = 0.0;
      int halvings = 0;
      while (true) {
        candidate = u - t * g;
        fc = value(candidate);
        if (std::isfinite(fc) && fc <= f - 1e-4 * t * gg) break;
        t *= 0.5;
        if (++halvings > 60) break;
      }
      ++it;
      if (halvings > 60) {
        newton(u, f, g, tolerance, it, max_iterations);
        break;
      }
      const Eigen::VectorXd gc = gradient(candidate);
      const Eigen::VectorXd s = candidate - u;
      const Eigen::VectorXd yv = gc - g;
      const double sy = s.dot(yv);
      step = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, 1e-12, 1e6) : std::min(2.0 * t, 1e6);
      u = candidate;
      u.array() -= u.mean();
      f = fc;
      g = gc;
    }
    r.u = u;
    r.objective = f;
    r.gradient_norm = g.lpNorm<Eigen::Infinity>();
    r.iterations = it;
    r.converged = r.gradient_norm <= tolerance;
    return r;
  }

 private:
  static constexpr double kNewtonThreshold = 1e-3;

  // Newton steps on the mean-zero slice while the Hessian is positive definite
  // there and each step shrinks the gradient. Returns true on convergence.
  bool newton(Eigen::VectorXd& u, double& f, Eigen::VectorXd& g, double tolerance, int& it, int max_iterations) const {
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n_, n_, 1.0 / n_);
    while (it < max_iterations) {
      if (g.lpNorm<Eigen::Infinity>() <= tolerance) return true;
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian(u) + ones);
      if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all()) return false;
      Eigen::VectorXd candidate = u - ldlt.solve(g);
      candidate.array() -= candidate.mean();
      const double fc = value(candidate);
      const Eigen::VectorXd gc = gradient(candidate);
      ++it;
      if (!std::isfinite(fc) || fc > f + 1e-12 * std::max(1.0, f) ||
          gc.lpNorm<Eigen::Infinity>() >= g.lpNorm<Eigen::Infinity>()) {
        return false;
      }
      u = candidate;
      f = fc;
      g = gc;
    }
    return g.lpNorm<Eigen::Infinity>() <= tolerance;
  }

  std::vector<OrderedPair> pairs_;
  int n_;
};

bool lexicographically_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a(k) != b(k)) return a(k) < b(k);
  }
  return false;
}

}  // namespace

BaselineResult solve_idls(const IncompletePCM& pcm, const IdlsOptions& options) {
  require_connected(pcm);
  if (options.restarts < 1) throw Error(Errc::InvalidArgument, "IDLS needs at least one restart");
  const int n = pcm.size();
  const IdlsProblem problem(pcm);
  const Eigen::VectorXd warm = solve_ills(build_comparison_graph(pcm)).y;
  Rng rng(options.seed);

  std::optional<LocalResult> best;
  Eigen::VectorXd best_w;
  int converged = 0;
  long total_iterations = 0;
  for (int k = 0; k < options.restarts; ++k) {
    Eigen::VectorXd start = warm;
    if (k > 0) {
      for (int i = 0; i < n; ++i) start(i) += rng.normal(0.0, options.jitter);
    }
    LocalResult local = problem.descend(start, options.gradient_tolerance, options.max_iterations);
    total_iterations += local.iterations;
    if (!local.converged) continue;
    ++converged;
    Eigen::VectorXd w = local.u.array().exp();
    w /= w.sum();
    if (!best || local.objective < best->objective ||
        (local.objective == best->objective && lexicographically_less(w, best_w))) {
      best = std::move(local);
      best_w = std::move(w);
    }
  }
  if (!best) throw Error(Errc::NoConvergence, "no IDLS restart reached the gradient tolerance");

  BaselineResult result;
  result.method = Method::Idls;
  result.weights = best_w;
  result.positive = true;
  result.diagnostics = {{"restarts", options.restarts},
                        {"converged_restarts", converged},
                        {"iterations", static_cast<double>(total_iterations)},
                        {"objective", best->objective},
                        {"gradient_norm", best->gradient_norm},
                        {"nonconvex", 1.0}};
  return result;
}

// ---------------------------------------------------------------------------

BaselineResult solve_iwls(const IncompletePCM& pcm) {
  require_connected(pcm);
  const int n = pcm.size();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : ordered_pairs(pcm)) {
    // (a_ij w_j - w_i)^2 = w' v v' w with v = a_ij e_j - e_i
    q(p.j, p.j) += p.a * p.a;
    q(p.i, p.i) += 1.0;
    q(p.i, p.j) -= p.a;
    q(p.j, p.i) -= p.a;
  }
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
  kkt.topLeftCorner(n, n) = 2.0 * q;
  kkt.block(0, n, n, 1).setOnes();
  kkt.block(n, 0, 1, n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  if (!lu.isInvertible()) throw Error(Errc::SingularSystem, "IWLS KKT system is rank deficient");
  const Eigen::VectorXd sol = lu.solve(rhs);

  BaselineResult result;
  result.method = Method::Iwls;
  result.weights = sol.head(n);
  result.positive = (result.weights.array() > 0.0).all();
  const double residual = (kkt * sol - rhs).lpNorm<Eigen::Infinity>();
  result.diagnostics = {{"kkt_residual", residual},
                        {"multiplier", sol(n)},
                        {"objective", result.weights.dot(q * result.weights)}};
  return result;
}

BaselineResult solve_ills_baseline(const IncompletePCM& pcm) {
  const auto g = build_comparison_graph(pcm);
  const auto s = solve_ills(g);
  BaselineResult result;
  result.method = Method::Ills;
  result.weights = s.weights.weights();
  result.diagnostics = {{"objective", s.objective}, {"residual", s.residual}};
  return result;
}

BaselineResult run_method(Method method, const IncompletePCM& pcm, const MethodOptions& options) {
  switch (method) {
    case Method::IllsMwov: {
      MwovOptions mwov;
      mwov.epsilon = options.epsilon;
      mwov.ordinal.delta = options.delta;
      mwov.ordinal.budget = options.ordinal_budget;
      const auto r = solve_ills_mwov(pcm, mwov);
      BaselineResult result;
      result.method = Method::IllsMwov;
      result.weights = r.cardinal.weights.weights();
      result.provenance = r.ordinal.provenance;
      result.diagnostics = {{"objective", r.cardinal.objective},
                            {"sigma", r.ordinal_objective.sigma},
                            {"tau", r.ordinal_objective.tau},
                            {"unique", r.ordinal.uniqueness_certificate ? 1.0 : 0.0},
                            {"timed_out", r.ordinal.timed_out ? 1.0 : 0.0},
                            {"active_constraints", static_cast<double>(r.cardinal.active.size())},
                            {"kkt_stationarity", r.cardinal.certificate.stationarity},
                            {"kkt_complementarity", r.cardinal.certificate.complementarity},
                            {"kkt_primal_feasibility", r.cardinal.certificate.primal_feasibility}};
      return result;
    }
    case Method::Ills: return solve_ills_baseline(pcm);
    case Method::Ev: return solve_ev(pcm, options.ev);
    case Method::Idls: return solve_idls(pcm, options.idls);
    case Method::Iwls: return solve_iwls(pcm);
  }
  throw Error(Errc::Internal, "unhandled method");
}

}  // namespace ahprank
