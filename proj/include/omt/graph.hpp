#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "omt/channel_operator.hpp"

namespace omt {

/// Connected, positively weighted, undirected channel graph. Nodes are
/// 0-based here; the JSON format is 1-based. Edge e = (i, j) with i < j is
/// oriented i -> j and c_e is the cost of moving unit mass along it.
class TransportGraph {
 public:
  /// Validates i < j, no duplicates or self-loops, positive costs, and
  /// connectivity. Edges given with i > j are rejected.
  TransportGraph(int nodes, std::vector<std::pair<int, int>> edges,
                 std::vector<double> costs);

  /// Triangle graph on 3 nodes with edges (0,1), (0,2), (1,2).
  static TransportGraph triangle(double c01 = 1.0, double c02 = 1.0,
                                 double c12 = 1.0);

  int nodes() const { return k_; }
  int edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edge_list() const { return edges_; }
  const std::vector<double>& costs() const { return costs_; }

 private:
  int k_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<double> costs_;
};

/// Signed k x l incidence matrix: +1 at the lower node, -1 at the upper node.
Eigen::MatrixXd build_incidence(const TransportGraph& g);

/// (grad x)_e = (x_i - x_j) / c_e for e = (i, j).
Eigen::VectorXd grad_graph(const TransportGraph& g, const Eigen::VectorXd& x);
/// div y = -D diag(1/c) y, the negative adjoint of grad_graph.
Eigen::VectorXd div_graph(const TransportGraph& g, const Eigen::VectorXd& y);
/// Graph Laplacian div o grad = -D diag(1/c^2) D^T.
Eigen::MatrixXd graph_laplacian(const TransportGraph& g);
/// Largest eigenvalue of -Laplacian.
double lambda_max_graph(const TransportGraph& g);

/// diag(1/c) D^T as a channel operator (P = k, Q = l).
ChannelOperator graph_channel_operator(const TransportGraph& g);

}  // namespace omt
