#include "omt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "omt/error.hpp"

namespace omt {

TransportGraph::TransportGraph(int nodes,
                               std::vector<std::pair<int, int>> edges,
                               std::vector<double> costs)
    : k_(nodes), edges_(std::move(edges)), costs_(std::move(costs)) {
  require(k_ >= 1, ErrorKind::InvalidArgument, "graph needs at least one node");
  require(edges_.size() == costs_.size(), ErrorKind::DimensionMismatch,
          "one cost per edge is required");
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [i, j] = edges_[e];
    require(i >= 0 && j >= 0 && i < k_ && j < k_, ErrorKind::InvalidArgument,
            "edge endpoint out of range");
    require(i != j, ErrorKind::InvalidArgument, "self-loop in graph");
    require(i < j, ErrorKind::InvalidArgument,
            "edges must be listed with i < j");
    require(seen.insert({i, j}).second, ErrorKind::InvalidArgument,
            "duplicate edge (" + std::to_string(i) + "," + std::to_string(j) +
                ")");
    require(costs_[e] > 0.0, ErrorKind::InvalidArgument,
            "edge costs must be positive");
  }
  // Connectivity by union-find.
  std::vector<int> parent(k_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& [i, j] : edges_) parent[find(i)] = find(j);
  for (int v = 0; v < k_; ++v) {
    require(find(v) == find(0), ErrorKind::InvalidArgument,
            "graph is not connected");
  }
}

TransportGraph TransportGraph::triangle(double c01, double c02, double c12) {
  return TransportGraph(3, {{0, 1}, {0, 2}, {1, 2}}, {c01, c02, c12});
}

Eigen::MatrixXd build_incidence(const TransportGraph& g) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.nodes(), g.edges());
  for (int e = 0; e < g.edges(); ++e) {
    const auto [i, j] = g.edge_list()[e];
    d(i, e) = 1.0;
    d(j, e) = -1.0;
  }
  return d;
}

namespace {

Eigen::MatrixXd scaled_transpose(const TransportGraph& g) {
  Eigen::MatrixXd d = build_incidence(g);
  Eigen::MatrixXd gt = d.transpose();
  for (int e = 0; e < g.edges(); ++e) gt.row(e) /= g.costs()[e];
  return gt;
}

}  // namespace

Eigen::VectorXd grad_graph(const TransportGraph& g, const Eigen::VectorXd& x) {
  require(x.size() == g.nodes(), ErrorKind::DimensionMismatch,
          "grad_graph: expected one value per node");
  Eigen::VectorXd y(g.edges());
  for (int e = 0; e < g.edges(); ++e) {
    const auto [i, j] = g.edge_list()[e];
    y(e) = (x(i) - x(j)) / g.costs()[e];
  }
  return y;
}

Eigen::VectorXd div_graph(const TransportGraph& g, const Eigen::VectorXd& y) {
  require(y.size() == g.edges(), ErrorKind::DimensionMismatch,
          "div_graph: expected one value per edge");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(g.nodes());
  for (int e = 0; e < g.edges(); ++e) {
    const auto [i, j] = g.edge_list()[e];
    const double f = y(e) / g.costs()[e];
    x(i) -= f;
    x(j) += f;
  }
  return x;
}

Eigen::MatrixXd graph_laplacian(const TransportGraph& g) {
  const Eigen::MatrixXd gt = scaled_transpose(g);
  return -(gt.transpose() * gt);
}

double lambda_max_graph(const TransportGraph& g) {
  return symmetric_lambda_max(-graph_laplacian(g));
}

ChannelOperator graph_channel_operator(const TransportGraph& g) {
  return ChannelOperator(scaled_transpose(g));
}

}  // namespace omt
