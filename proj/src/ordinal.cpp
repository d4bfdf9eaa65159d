#include "ahprank/ordinal.hpp"

#include "ahprank/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace ahprank {

int PreferenceRelation::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool PreferenceRelation::irreflexive() const {
  for (int i = 0; i < n_; ++i)
    if ((*this)(i, i)) return false;
  return true;
}

bool PreferenceRelation::asymmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j) && (*this)(j, i)) return false;
  return true;
}

bool PreferenceRelation::transitive() const {
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      if (k == i || !(*this)(i, k)) continue;
      for (int j = 0; j < n_; ++j)
        if (j != i && j != k && (*this)(k, j) && !(*this)(i, j)) return false;
    }
  return true;
}

std::string PreferenceRelation::bit_string() const {
  std::string s(bits_.size(), '0');
  for (size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k]) s[k] = '1';
  return s;
}

std::string_view to_string(OrdinalProvenance p) noexcept {
  return p == OrdinalProvenance::FastPath ? "fast-path" : "exact-ilp";
}

OrdinalObjective evaluate_objective(const IncompletePCM& pcm, const PreferenceRelation& x, double delta) {
  OrdinalObjective obj;
  obj.delta = delta;
  const int n = pcm.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!pcm.has(i, j)) continue;
      const int diff = static_cast<int>(x(i, j)) - static_cast<int>(x(j, i));
      if (pcm.is_tie(i, j)) {
        obj.tau -= delta * (static_cast<int>(x(i, j)) + static_cast<int>(x(j, i)));
      } else if (diff != 0) {
        obj.sigma += diff * std::log(pcm(i, j));
      }
    }
  }
  return obj;
}

double negligible_delta_bound(const IncompletePCM& pcm) {
  double min_log = std::numeric_limits<double>::infinity();
  const int n = pcm.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pcm.has(i, j) && pcm(i, j) > 1.0) min_log = std::min(min_log, std::log(pcm(i, j)));
  return min_log / pcm.comparison_count();
}

// ---------------------------------------------------------------------------

namespace {

using Row = std::uint64_t;

struct PairDecision {
  int i;
  int j;
  double forward;   // value if i < j is decided as i preferred
  double backward;  // value if j preferred
  double max_gain;
  bool tie;
};

class BranchAndBound {
 public:
  BranchAndBound(const IncompletePCM& pcm, const OrdinalOptions& options)
      : n_(pcm.size()), options_(options), start_(std::chrono::steady_clock::now()) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (!pcm.has(i, j)) continue;
        const bool tie = pcm.is_tie(i, j);
        const double l = tie ? 0.0 : std::log(pcm(i, j));
        pairs_.push_back({i, j, tie ? -options.delta : l, tie ? -options.delta : -l, std::abs(l), tie});
      }
    }
    std::stable_sort(pairs_.begin(), pairs_.end(),
                     [](const PairDecision& a, const PairDecision& b) { return a.max_gain > b.max_gain; });
    suffix_.assign(pairs_.size() + 1, 0.0);
    for (size_t k = pairs_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + pairs_[k].max_gain;
    state_.assign(pairs_.size(), 0);
  }

  OrdinalPreferenceMatrix run() {
    std::vector<Row> closure(n_, 0);
    const auto greedy = greedy_closure();
    threshold_ = value_of(greedy);
    fallback_ = greedy;
    search(0, closure, 0.0);

    OrdinalPreferenceMatrix result;
    result.provenance = OrdinalProvenance::ExactILP;
    result.x = to_relation(have_best_ ? best_ : fallback_);
    result.optimum_count = have_best_ ? count_ : 0;
    result.timed_out = timed_out_;
    result.uniqueness_certificate = have_best_ && count_ == 1 && !timed_out_;
    result.nodes_explored = nodes_;
    return result;
  }

 private:
  static bool has(const std::vector<Row>& r, int i, int j) { return (r[i] >> j) & 1U; }

  // Adds i < j (i preferred) and closes transitively; false if a cycle forms.
  bool add(std::vector<Row>& r, int i, int j) const {
    if (has(r, j, i)) return false;
    const Row gained = r[j] | (Row{1} << j);
    for (int a = 0; a < n_; ++a)
      if (a == i || has(r, a, i)) r[a] |= gained;
    return true;
  }

  bool neither_pairs_intact(const std::vector<Row>& r, size_t upto) const {
    for (size_t k = 0; k < upto; ++k) {
      if (state_[k] != 3) continue;
      const auto& p = pairs_[k];
      if (has(r, p.i, p.j) || has(r, p.j, p.i)) return false;
    }
    return true;
  }

  double value_of(const std::vector<Row>& r) const {
    double v = 0.0;
    for (const auto& p : pairs_) {
      if (has(r, p.i, p.j)) v += p.forward;
      else if (has(r, p.j, p.i)) v += p.backward;
    }
    return v;
  }

  std::vector<Row> greedy_closure() const {
    std::vector<Row> r(n_, 0);
    for (const auto& p : pairs_) {
      if (p.tie || has(r, p.i, p.j) || has(r, p.j, p.i)) continue;
      if (p.forward > 0) add(r, p.i, p.j);
      else add(r, p.j, p.i);
    }
    return r;
  }

  bool tolerance_equal(double a, double b) const { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

  // Row-major bit order: column j of row i is position i * n + j.
  bool lex_less(const std::vector<Row>& a, const std::vector<Row>& b) const {
    for (int i = 0; i < n_; ++i) {
      if (a[i] == b[i]) continue;
      const Row diff = a[i] ^ b[i];
      const Row lowest = diff & (~diff + 1);
      return (a[i] & lowest) == 0;
    }
    return false;
  }

  void record(const std::vector<Row>& r, double value) {
    if (!have_best_ || (value > best_value_ && !tolerance_equal(value, best_value_))) {
      best_ = r;
      best_value_ = value;
      count_ = 1;
      have_best_ = true;
      threshold_ = std::max(threshold_, value);
      return;
    }
    if (tolerance_equal(value, best_value_)) {
      count_ = std::min(count_ + 1, kOptimumCountCap);
      if (lex_less(r, best_)) best_ = r;
    }
  }

  bool out_of_time() {
    if ((++nodes_ & 1023) == 0 && std::chrono::steady_clock::now() - start_ > options_.budget) timed_out_ = true;
    return timed_out_;
  }

  void search(size_t k, const std::vector<Row>& closure, double value) {
    if (out_of_time()) return;
    if (value + suffix_[k] < threshold_ && !tolerance_equal(value + suffix_[k], threshold_)) return;
    if (k == pairs_.size()) {
      record(closure, value);
      return;
    }
    const auto& p = pairs_[k];
    if (has(closure, p.i, p.j)) {
      state_[k] = 1;
      search(k + 1, closure, value + p.forward);
      return;
    }
    if (has(closure, p.j, p.i)) {
      state_[k] = 2;
      search(k + 1, closure, value + p.backward);
      return;
    }
    // Branch order: the preferred direction, then unrelated, then reversed.
    // Ties are cheapest left unrelated.
    std::array<int, 3> order = p.tie ? std::array<int, 3>{3, 1, 2}
                                     : (p.forward > 0 ? std::array<int, 3>{1, 3, 2} : std::array<int, 3>{2, 3, 1});
    for (int choice : order) {
      state_[k] = choice;
      std::vector<Row> next = closure;
      double gained = 0.0;
      if (choice == 1) {
        add(next, p.i, p.j);
        gained = p.forward;
      } else if (choice == 2) {
        add(next, p.j, p.i);
        gained = p.backward;
      }
      if (choice != 3 && !neither_pairs_intact(next, k)) continue;
      search(k + 1, next, value + gained);
      if (timed_out_) return;
    }
    state_[k] = 0;
  }

  PreferenceRelation to_relation(const std::vector<Row>& r) const {
    PreferenceRelation x(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (has(r, i, j)) x.set(i, j);
    return x;
  }

  int n_;
  OrdinalOptions options_;
  std::chrono::steady_clock::time_point start_;
  std::vector<PairDecision> pairs_;
  std::vector<double> suffix_;
  std::vector<int> state_;  // 1 forward, 2 backward, 3 unrelated
  std::vector<Row> best_;
  std::vector<Row> fallback_;
  double best_value_ = 0.0;
  double threshold_ = 0.0;
  bool have_best_ = false;
  long count_ = 0;
  long nodes_ = 0;
  bool timed_out_ = false;
};

void require_connected(const IncompletePCM& pcm) {
  if (!is_connected(build_comparison_graph(pcm))) throw Error(Errc::Disconnected, "comparison graph is not connected");
}

}  // namespace

OrdinalPreferenceMatrix solve_exact_ilp(const IncompletePCM& pcm, const OrdinalOptions& options) {
  if (pcm.size() > 64) throw Error(Errc::InvalidArgument, "exact ordinal solver supports at most 64 alternatives");
  if (!(options.delta > 0.0)) throw Error(Errc::InvalidArgument, "delta must be positive");
  require_connected(pcm);
  return BranchAndBound(pcm, options).run();
}

PreferenceRelation boolean_square_closure(PreferenceRelation adj) {
  const int n = adj.size();
  for (int step = 0; step < n - 1; ++step) {
    PreferenceRelation next = adj;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (!adj(i, k)) continue;
        for (int j = 0; j < n; ++j)
          if (adj(k, j)) next.set(i, j);
      }
    if (next == adj) break;
    adj = std::move(next);
  }
  return adj;
}

OrdinalPreferenceMatrix solve_fast_path(const DominanceGraph& gd, const IncompletePCM& pcm, double delta) {
  if (!(delta > 0.0)) throw Error(Errc::InvalidArgument, "delta must be positive");
  const auto report = check_uniqueness_conditions(gd);
  if (!report.fast_path_eligible) {
    std::string why;
    for (const auto& r : report.reasons()) why += (why.empty() ? "" : "; ") + r;
    throw Error(Errc::NotEligible, why);
  }
  (void)pcm;
  const int n = gd.n;
  PreferenceRelation adj(n);
  std::vector<char> broken(gd.edges.size(), 0);
  for (const auto& c : report.cycles) {
    int weakest = c.edges.front();
    for (int e : c.edges)
      if (gd.edges[e].weight < gd.edges[weakest].weight) weakest = e;
    broken[weakest] = 1;
    adj.set(gd.edges[weakest].to, gd.edges[weakest].from);
  }
  for (size_t e = 0; e < gd.edges.size(); ++e) {
    if (!broken[e] && !gd.edges[e].tie) adj.set(gd.edges[e].from, gd.edges[e].to);
  }
  OrdinalPreferenceMatrix result;
  result.x = boolean_square_closure(std::move(adj));
  if (!result.x.is_strict_partial_order()) {
    throw Error(Errc::Internal, "cycle-breaking construction produced an inconsistent relation");
  }
  result.provenance = OrdinalProvenance::FastPath;
  result.uniqueness_certificate = true;
  result.optimum_count = 1;
  return result;
}

OrdinalPreferenceMatrix solve_ordinal(const IncompletePCM& pcm, const OrdinalOptions& options) {
  require_connected(pcm);
  const auto gd = build_dominance_graph(pcm);
  try {
    if (check_uniqueness_conditions(gd, options.cycle_cap).fast_path_eligible) {
      return solve_fast_path(gd, pcm, options.delta);
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CycleExplosion) throw;
  }
  return solve_exact_ilp(pcm, options);
}

PreferenceRelation ordinal_from_weights(const IncompletePCM& pcm, const Eigen::VectorXd& weights) {
  const int n = pcm.size();
  if (weights.size() != n) throw Error(Errc::InvalidArgument, "weight vector size does not match matrix");
  PreferenceRelation x(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && weights(i) - weights(j) > 1e-9 * std::max(std::abs(weights(i)), std::abs(weights(j))))
        x.set(i, j);
  return x;
}

std::string relation_to_csv(const PreferenceRelation& x) {
  std::string out;
  for (int i = 0; i < x.size(); ++i) {
    for (int j = 0; j < x.size(); ++j) {
      if (j) out += ',';
      out += x(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace ahprank
