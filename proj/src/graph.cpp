#include "ahprank/graph.hpp"

#include "ahprank/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace ahprank {

ComparisonGraph build_comparison_graph(const IncompletePCM& pcm) {
  ComparisonGraph g;
  g.n = pcm.size();
  g.degree.assign(g.n, 0);
  g.neighbors.assign(g.n, {});
  g.laplacian = Eigen::MatrixXd::Zero(g.n, g.n);
  g.log_matrix = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (!pcm.has(i, j)) continue;
      g.neighbors[i].push_back(j);
      ++g.degree[i];
      g.laplacian(i, j) = -1.0;
      g.log_matrix(i, j) = std::log(pcm(i, j));
      if (i < j) g.edges.emplace_back(i, j);
    }
    g.laplacian(i, i) = g.degree[i];
  }
  // Exact antisymmetry, independent of how ln rounds a_ij versus a_ji.
  for (auto [i, j] : g.edges) g.log_matrix(j, i) = -g.log_matrix(i, j);
  return g;
}

int DominanceGraph::find(int from, int to) const {
  for (int e : out[from]) {
    if (edges[e].to == to) return e;
  }
  return -1;
}

DominanceGraph build_dominance_graph(const IncompletePCM& pcm) {
  DominanceGraph gd;
  gd.n = pcm.size();
  for (int i = 0; i < gd.n; ++i) {
    for (int j = i + 1; j < gd.n; ++j) {
      if (!pcm.has(i, j)) continue;
      const double a = pcm(i, j);
      if (a >= 1.0) {
        gd.edges.push_back({i, j, a, a == 1.0});
      } else {
        gd.edges.push_back({j, i, pcm(j, i), false});
      }
    }
  }
  std::sort(gd.edges.begin(), gd.edges.end(), [](const DirectedEdge& a, const DirectedEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  gd.out.assign(gd.n, {});
  for (int e = 0; e < static_cast<int>(gd.edges.size()); ++e) gd.out[gd.edges[e].from].push_back(e);
  return gd;
}

bool is_connected(const ComparisonGraph& g) {
  if (g.n == 0) return true;
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++visited;
        stack.push_back(u);
      }
    }
  }
  return visited == g.n;
}

double density(const ComparisonGraph& g) {
  return 2.0 * static_cast<double>(g.edges.size()) / (static_cast<double>(g.n) * (g.n - 1));
}

// ---------------------------------------------------------------------------
// Johnson (1975): elementary circuits rooted at each start vertex s, searched
// inside the strongly connected component of s in the subgraph induced by
// {s, ..., n-1}.

namespace {

std::vector<int> component_of(const DominanceGraph& gd, int s) {
  const int n = gd.n;
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int counter = 0;
  int comp_count = 0;
  std::function<void(int)> strongconnect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int e : gd.out[v]) {
      const int w = gd.edges[e].to;
      if (w < s) continue;
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        const int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comp_count;
        if (w == v) break;
      }
      ++comp_count;
    }
  };
  strongconnect(s);
  std::vector<int> members;
  for (int v = s; v < n; ++v)
    if (comp[v] == comp[s]) members.push_back(v);
  return members;
}

class CircuitSearch {
 public:
  CircuitSearch(const DominanceGraph& gd, std::size_t cap, std::vector<Cycle>& out)
      : gd_(gd), cap_(cap), out_(out), blocked_(gd.n, 0), blocked_by_(gd.n), allowed_(gd.n, 0) {}

  void run_from(int s, const std::vector<int>& component) {
    std::fill(allowed_.begin(), allowed_.end(), 0);
    for (int v : component) {
      allowed_[v] = 1;
      blocked_[v] = 0;
      blocked_by_[v].clear();
    }
    start_ = s;
    path_.clear();
    circuit(s);
  }

 private:
  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = 1;
    for (int e : gd_.out[v]) {
      const int w = gd_.edges[e].to;
      if (!allowed_[w]) continue;
      if (w == start_) {
        emit();
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int e : gd_.out[v]) {
        const int w = gd_.edges[e].to;
        if (allowed_[w]) blocked_by_[w].insert(v);
      }
    }
    path_.pop_back();
    return found;
  }

  void unblock(int v) {
    blocked_[v] = 0;
    auto pending = std::move(blocked_by_[v]);
    blocked_by_[v].clear();
    for (int w : pending)
      if (blocked_[w]) unblock(w);
  }

  void emit() {
    if (out_.size() >= cap_) {
      throw Error(Errc::CycleExplosion, "more than " + std::to_string(cap_) + " cycles in the dominance graph");
    }
    Cycle c;
    c.nodes = path_;
    for (size_t k = 0; k < path_.size(); ++k) {
      const int from = path_[k];
      const int to = path_[(k + 1) % path_.size()];
      c.edges.push_back(gd_.find(from, to));
    }
    c.min_weight = gd_.edges[c.edges.front()].weight;
    for (int e : c.edges) c.min_weight = std::min(c.min_weight, gd_.edges[e].weight);
    for (int e : c.edges)
      if (std::abs(gd_.edges[e].weight - c.min_weight) <= 1e-12 * c.min_weight) ++c.min_multiplicity;
    c.ambiguous = c.min_multiplicity > 1;
    out_.push_back(std::move(c));
  }

  const DominanceGraph& gd_;
  std::size_t cap_;
  std::vector<Cycle>& out_;
  std::vector<char> blocked_;
  std::vector<std::set<int>> blocked_by_;
  std::vector<char> allowed_;
  std::vector<int> path_;
  int start_ = 0;
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const DominanceGraph& gd, std::size_t cap) {
  std::vector<Cycle> cycles;
  CircuitSearch search(gd, cap, cycles);
  for (int s = 0; s < gd.n; ++s) {
    const auto component = component_of(gd, s);
    if (component.size() < 2) continue;
    search.run_from(s, component);
  }
  std::vector<std::vector<int>> keys(cycles.size());
  std::vector<size_t> order(cycles.size());
  for (size_t k = 0; k < cycles.size(); ++k) {
    keys[k] = cycles[k].nodes;
    std::sort(keys[k].begin(), keys[k].end());
    order[k] = k;
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::tie(keys[a], cycles[a].nodes) < std::tie(keys[b], cycles[b].nodes);
  });
  std::vector<Cycle> sorted;
  sorted.reserve(cycles.size());
  for (size_t k : order) sorted.push_back(std::move(cycles[k]));
  return sorted;
}

UniquenessReport check_uniqueness_conditions(const DominanceGraph& gd, std::size_t cap) {
  UniquenessReport report;
  report.cycles = enumerate_cycles(gd, cap);
  const int count = static_cast<int>(report.cycles.size());
  std::vector<std::vector<int>> edge_sets(count);
  for (int c = 0; c < count; ++c) {
    if (report.cycles[c].ambiguous) report.ambiguous_cycles.push_back(c);
    edge_sets[c] = report.cycles[c].edges;
    std::sort(edge_sets[c].begin(), edge_sets[c].end());
  }
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      std::vector<int> common;
      std::set_intersection(edge_sets[a].begin(), edge_sets[a].end(), edge_sets[b].begin(), edge_sets[b].end(),
                            std::back_inserter(common));
      if (!common.empty()) report.shared_edge_pairs.emplace_back(a, b);
    }
  }
  report.fast_path_eligible = report.ambiguous_cycles.empty() && report.shared_edge_pairs.empty();
  return report;
}

namespace {

std::string cycle_text(const Cycle& c) {
  std::string s;
  for (int v : c.nodes) s += std::to_string(v + 1) + "->";
  return s + std::to_string(c.nodes.front() + 1);
}

}  // namespace

std::vector<std::string> UniquenessReport::reasons() const {
  std::vector<std::string> out;
  for (int c : ambiguous_cycles) {
    out.push_back("ambiguous cycle " + cycle_text(cycles[c]) + " (minimum ratio " + format_number(cycles[c].min_weight) +
                  " attained " + std::to_string(cycles[c].min_multiplicity) + " times)");
  }
  for (auto [a, b] : shared_edge_pairs) {
    out.push_back("cycles " + cycle_text(cycles[a]) + " and " + cycle_text(cycles[b]) + " share an edge");
  }
  return out;
}

std::string to_dot(const ComparisonGraph& g, const DominanceGraph& gd, const std::vector<std::string>& labels) {
  auto name = [&](int v) {
    return "\"" + (static_cast<int>(labels.size()) == g.n ? labels[v] : "v" + std::to_string(v + 1)) + "\"";
  };
  std::string out = "graph availability {\n";
  for (int v = 0; v < g.n; ++v) out += "  " + name(v) + ";\n";
  for (auto [i, j] : g.edges) out += "  " + name(i) + " -- " + name(j) + ";\n";
  out += "}\ndigraph dominance {\n";
  for (int v = 0; v < gd.n; ++v) out += "  " + name(v) + ";\n";
  for (const auto& e : gd.edges) {
    out += "  " + name(e.from) + " -> " + name(e.to) + " [label=\"" + format_number(e.weight) + "\"" +
           (e.tie ? ", style=dashed" : "") + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace ahprank
