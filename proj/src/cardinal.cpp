#include "ahprank/cardinal.hpp"

#include "ahprank/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace ahprank {

namespace {

int resolve_gauge(int gauge, int n) {
  if (gauge < 0) return n - 1;
  if (gauge >= n) throw Error(Errc::InvalidArgument, "gauge index out of range");
  return gauge;
}

void require_connected(const ComparisonGraph& g) {
  if (!is_connected(g)) throw Error(Errc::Disconnected, "comparison graph is not connected");
}

}  // namespace

LogLSProblem make_log_ls_problem(const IncompletePCM& pcm, const PreferenceRelation& x, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  if (x.size() != pcm.size()) throw Error(Errc::InvalidArgument, "relation size does not match matrix");
  LogLSProblem problem;
  problem.graph = build_comparison_graph(pcm);
  problem.epsilon = epsilon;
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j)
      if (i != j && x(i, j)) problem.constraints.emplace_back(i, j);
  return problem;
}

double log_ls_objective(const ComparisonGraph& g, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (auto [i, j] : g.edges) {
    const double r = g.log_matrix(i, j) - y(i) + y(j);
    total += r * r;
  }
  return total;
}

Eigen::VectorXd log_ls_gradient(const ComparisonGraph& g, const Eigen::VectorXd& y) {
  return 2.0 * (g.laplacian * y - g.log_row_sums());
}

IllsSolution solve_ills(const ComparisonGraph& g, int gauge) {
  require_connected(g);
  const int n = g.n;
  gauge = resolve_gauge(gauge, n);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (i != gauge) keep.push_back(i);
  const Eigen::VectorXd r = g.log_row_sums();
  Eigen::MatrixXd reduced(n - 1, n - 1);
  Eigen::VectorXd rhs(n - 1);
  for (int a = 0; a < n - 1; ++a) {
    rhs(a) = r(keep[a]);
    for (int b = 0; b < n - 1; ++b) reduced(a, b) = g.laplacian(keep[a], keep[b]);
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
  if (ldlt.info() != Eigen::Success) throw Error(Errc::SingularSystem, "reduced Laplacian factorization failed");
  const Eigen::VectorXd z = ldlt.solve(rhs);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int a = 0; a < n - 1; ++a) y(keep[a]) = z(a);
  IllsSolution s{PriorityVector::from_log_weights(y), y, log_ls_objective(g, y), 0.0};
  s.residual = (g.laplacian * y - r).lpNorm<Eigen::Infinity>();
  return s;
}

KKTCertificate verify_kkt(const LogLSProblem& problem, const Eigen::VectorXd& y, const Eigen::MatrixXd& lambda) {
  const auto& g = problem.graph;
  if (y.size() != g.n || lambda.rows() != g.n || lambda.cols() != g.n) {
    throw Error(Errc::InvalidArgument, "shape mismatch in KKT verification");
  }
  KKTCertificate cert;
  cert.lambda = lambda;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.n);
  const Eigen::VectorXd stationarity = g.laplacian * y - 0.5 * (lambda - lambda.transpose()) * ones - g.log_row_sums();
  cert.stationarity = stationarity.lpNorm<Eigen::Infinity>();
  Eigen::MatrixXd off_support = lambda.cwiseAbs();
  for (auto [i, j] : problem.constraints) {
    const double slack = y(j) - y(i) + problem.epsilon;  // <= 0 when feasible
    cert.complementarity = std::max(cert.complementarity, std::abs(lambda(i, j) * slack));
    cert.primal_feasibility = std::max(cert.primal_feasibility, slack);
    cert.dual_feasibility = std::max(cert.dual_feasibility, -lambda(i, j));
    off_support(i, j) = 0.0;
  }
  cert.dual_feasibility = std::max(cert.dual_feasibility, off_support.maxCoeff());
  return cert;
}

// ---------------------------------------------------------------------------
// Active-set solver for  min y'Ly - 2 r'y  s.t.  y_i - y_j >= eps,  y_g = 0.
// The objective equals log_ls_objective up to a constant; its Hessian is 2L.

namespace {

class ActiveSetSolver {
 public:
  ActiveSetSolver(const LogLSProblem& problem, int gauge)
      : p_(problem), n_(problem.graph.n), gauge_(gauge), r_(problem.graph.log_row_sums()) {}

  bool feasible(const Eigen::VectorXd& y, double tol) const {
    for (auto [i, j] : p_.constraints)
      if (y(i) - y(j) < p_.epsilon - tol) return false;
    return true;
  }

  // y_i = eps * (longest chain below i) satisfies every constraint of an
  // acyclic constraint set.
  Eigen::VectorXd chain_height_point() const {
    std::vector<std::vector<int>> below(n_);
    for (auto [i, j] : p_.constraints) below[i].push_back(j);
    std::vector<int> height(n_, -1), state(n_, 0);
    std::function<int(int)> visit = [&](int v) -> int {
      if (state[v] == 2) return height[v];
      if (state[v] == 1) throw Error(Errc::Infeasible, "separation constraints contain a cycle");
      state[v] = 1;
      int h = 0;
      for (int u : below[v]) h = std::max(h, visit(u) + 1);
      state[v] = 2;
      return height[v] = h;
    };
    Eigen::VectorXd y(n_);
    for (int v = 0; v < n_; ++v) y(v) = p_.epsilon * visit(v);
    return y;
  }

  // Solves the equality-constrained QP on the working set.
  // Returns (y, multipliers of the working set).
  std::pair<Eigen::VectorXd, Eigen::VectorXd> equality_solve(const std::vector<int>& working) const {
    const int m = static_cast<int>(working.size()) + 1;
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n_ + m, n_ + m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_ + m);
    kkt.topLeftCorner(n_, n_) = 2.0 * p_.graph.laplacian;
    rhs.head(n_) = 2.0 * r_;
    kkt(n_, gauge_) = kkt(gauge_, n_) = 1.0;
    for (int w = 0; w < static_cast<int>(working.size()); ++w) {
      const auto [i, j] = p_.constraints[working[w]];
      const int row = n_ + 1 + w;
      kkt(row, i) = kkt(i, row) = 1.0;
      kkt(row, j) = kkt(j, row) = -1.0;
      rhs(row) = p_.epsilon;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) throw Error(Errc::SingularSystem, "working-set KKT system is singular");
    const Eigen::VectorXd sol = lu.solve(rhs);
    // Stationarity: 2(Ly - r) = sum_k mu_k a_k, and the system holds
    // 2Ly + A' nu = 2r, so mu = -nu.
    Eigen::VectorXd mu = -sol.tail(m - 1);
    return {sol.head(n_), mu};
  }

  ConstrainedSolution solve(Eigen::VectorXd y, int max_iterations) {
    std::vector<int> working;
    std::vector<char> in_working(p_.constraints.size(), 0);
    const double tol = 1e-12;
    int iteration = 0;
    Eigen::VectorXd mu;
    for (;; ++iteration) {
      if (iteration >= max_iterations) throw Error(Errc::MaxIterations, "active-set iteration limit reached");
      auto [target, multipliers] = equality_solve(working);
      const Eigen::VectorXd step = target - y;
      if (step.lpNorm<Eigen::Infinity>() <= 1e-12 * (1.0 + y.lpNorm<Eigen::Infinity>())) {
        y = target;
        int worst = -1;
        for (int w = 0; w < static_cast<int>(working.size()); ++w) {
          if (multipliers(w) < -tol && (worst < 0 || multipliers(w) < multipliers(worst))) worst = w;
        }
        if (worst < 0) {
          mu = multipliers;
          break;
        }
        in_working[working[worst]] = 0;
        working.erase(working.begin() + worst);
        continue;
      }
      double alpha = 1.0;
      int blocking = -1;
      const double flat = 1e-10 * step.lpNorm<Eigen::Infinity>();
      for (int k = 0; k < static_cast<int>(p_.constraints.size()); ++k) {
        if (in_working[k]) continue;
        const auto [i, j] = p_.constraints[k];
        const double slope = step(i) - step(j);
        if (slope >= -flat) continue;
        const double t = std::max(0.0, (p_.epsilon - (y(i) - y(j))) / slope);
        if (t < alpha) {
          alpha = t;
          blocking = k;
        }
      }
      y += alpha * step;
      if (blocking >= 0) {
        working.push_back(blocking);
        in_working[blocking] = 1;
      }
    }

    y.array() -= y(gauge_);
    ConstrainedSolution s{PriorityVector::from_log_weights(y), y, log_ls_objective(p_.graph, y), {}, iteration, {}};
    Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(n_, n_);
    for (int w = 0; w < static_cast<int>(working.size()); ++w) {
      const auto [i, j] = p_.constraints[working[w]];
      lambda(i, j) = std::max(0.0, mu(w));
      s.active.emplace_back(i, j);
    }
    s.certificate = verify_kkt(p_, y, lambda);
    return s;
  }

 private:
  const LogLSProblem& p_;
  int n_;
  int gauge_;
  Eigen::VectorXd r_;
};

}  // namespace

ConstrainedSolution solve_constrained(const LogLSProblem& problem, const CardinalOptions& options) {
  const auto& g = problem.graph;
  require_connected(g);
  if (!(problem.epsilon > 0.0)) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  const int gauge = resolve_gauge(options.gauge, g.n);
  ActiveSetSolver solver(problem, gauge);
  Eigen::VectorXd start = solve_ills(g, gauge).y;
  if (!solver.feasible(start, 0.0)) {
    start = solver.chain_height_point();
    start.array() -= start(gauge);
  }
  const int limit = options.max_iterations > 0 ? options.max_iterations
                                               : 50 * (g.n + static_cast<int>(problem.constraints.size())) + 100;
  return solver.solve(std::move(start), limit);
}

MwovResult solve_ills_mwov(const IncompletePCM& pcm, const MwovOptions& options) {
  MwovResult result;
  result.ordinal = solve_ordinal(pcm, options.ordinal);
  result.ordinal_objective = evaluate_objective(pcm, result.ordinal.x, options.ordinal.delta);
  result.cardinal = solve_constrained(make_log_ls_problem(pcm, result.ordinal.x, options.epsilon), options.cardinal);
  return result;
}

}  // namespace ahprank
