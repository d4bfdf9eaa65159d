#pragma once

#include "ahprank/pcm.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace ahprank {

/// Undirected availability graph of a PCM, with the matrices the log
/// least-squares methods need.
struct ComparisonGraph {
  int n = 0;
  /// Compared pairs {i, j}, stored with i < j in lexicographic order.
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
  std::vector<std::vector<int>> neighbors;
  /// L = D - Adj.
  Eigen::MatrixXd laplacian;
  /// P_ij = ln a_ij on present pairs, 0 elsewhere.
  Eigen::MatrixXd log_matrix;

  /// r = P * 1.
  Eigen::VectorXd log_row_sums() const { return log_matrix.rowwise().sum(); }
};

struct DirectedEdge {
  int from = 0;
  int to = 0;
  double weight = 1.0;  // a_{from,to} >= 1
  bool tie = false;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Directed graph with one edge per compared pair, pointing from the weakly
/// preferred alternative. Ties are oriented low index -> high index.
struct DominanceGraph {
  int n = 0;
  std::vector<DirectedEdge> edges;
  /// out[i] lists indices into `edges`, ordered by target node.
  std::vector<std::vector<int>> out;

  /// Index of the edge i->j, or -1.
  int find(int from, int to) const;
};

struct Cycle {
  /// Node sequence starting at the smallest node; closes back on nodes.front().
  std::vector<int> nodes;
  /// Indices into DominanceGraph::edges, in traversal order.
  std::vector<int> edges;
  double min_weight = 1.0;
  int min_multiplicity = 0;
  bool ambiguous = false;
};

inline constexpr std::size_t kDefaultCycleCap = 100000;

ComparisonGraph build_comparison_graph(const IncompletePCM& pcm);
DominanceGraph build_dominance_graph(const IncompletePCM& pcm);

bool is_connected(const ComparisonGraph& g);
/// 2|E| / (n(n-1)).
double density(const ComparisonGraph& g);

/// All elementary directed cycles (Johnson's algorithm), sorted by their
/// sorted node set, then by node sequence. Throws Errc::CycleExplosion once
/// more than `cap` cycles are found.
std::vector<Cycle> enumerate_cycles(const DominanceGraph& gd, std::size_t cap = kDefaultCycleCap);

struct UniquenessReport {
  bool fast_path_eligible = false;
  std::vector<Cycle> cycles;
  std::vector<int> ambiguous_cycles;
  /// Pairs of cycle indices that share at least one edge.
  std::vector<std::pair<int, int>> shared_edge_pairs;

  std::vector<std::string> reasons() const;
};

/// Checks the sufficient conditions for a unique ordinal optimum: no
/// ambiguous cycle and pairwise edge-disjoint cycles.
UniquenessReport check_uniqueness_conditions(const DominanceGraph& gd, std::size_t cap = kDefaultCycleCap);

/// Graphviz export of the availability graph and the dominance graph.
std::string to_dot(const ComparisonGraph& g, const DominanceGraph& gd, const std::vector<std::string>& labels = {});

}  // namespace ahprank
