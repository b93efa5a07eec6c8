#include "omt/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "omt/error.hpp"

namespace omt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Successive shortest paths with Dijkstra on reduced costs. All arcs are
// uncapacitated; the residual capacity of a reverse arc is the flow on its
// forward twin (cap 0 minus a negative flow).
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : adj_(nodes) {}

  void add_arc(int from, int to, double cost) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cost, kInf, 0.0});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, -cost, 0.0, 0.0});
  }

  // supply > 0 emits mass, < 0 absorbs it; supplies must balance.
  double solve(std::vector<double> supply) {
    const int nv = static_cast<int>(adj_.size());
    double scale = 0.0;
    for (double s : supply) scale += std::abs(s);
    const double tol = 1e-14 * std::max(scale, 1.0);
    std::vector<double> pot(nv, 0.0), dist(nv);
    std::vector<int> via(nv), root(nv);
    double cost = 0.0;

    for (;;) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (int v = 0; v < nv; ++v)
        if (supply[v] > tol) {
          dist[v] = 0.0;
          root[v] = v;
          pq.emplace(0.0, v);
        }
      if (pq.empty()) break;

      int sink = -1;
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (supply[v] < -tol) {
          sink = v;
          break;
        }
        for (int a : adj_[v]) {
          const Arc& arc = arcs_[a];
          // Rounding can leave a reverse arc with a tiny residual; pushing
          // through it would make no progress.
          if (arc.cap - arc.flow <= tol) continue;
          // Reduced costs are >= 0 in exact arithmetic; clamping the rounding
          // keeps zero-cost cycles from looking negative.
          const double nd = d + std::max(arc.cost + pot[v] - pot[arc.to], 0.0);
          if (nd < dist[arc.to]) {
            dist[arc.to] = nd;
            via[arc.to] = a;
            root[arc.to] = root[v];
            pq.emplace(nd, arc.to);
          }
        }
      }
      require(sink >= 0, ErrorKind::Infeasible,
              "min-cost flow: supplies cannot be routed");

      const double reach = dist[sink];
      for (int v = 0; v < nv; ++v) pot[v] += std::min(dist[v], reach);

      double amount = std::min(supply[root[sink]], -supply[sink]);
      for (int v = sink; v != root[sink]; v = arcs_[via[v] ^ 1].to) {
        const Arc& arc = arcs_[via[v]];
        amount = std::min(amount, arc.cap - arc.flow);
      }
      for (int v = sink; v != root[sink]; v = arcs_[via[v] ^ 1].to) {
        Arc& arc = arcs_[via[v]];
        arc.flow += amount;
        arcs_[via[v] ^ 1].flow -= amount;
        cost += amount * arc.cost;
      }
      supply[root[sink]] -= amount;
      supply[sink] += amount;
    }
    return cost;
  }

 private:
  struct Arc {
    int to;
    double cost;
    double cap;
    double flow;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace

double lp_oracle(const TransportProblem& problem, const SolverConfig& cfg) {
  require(!problem.u_shape.is_matrix(), ErrorKind::InvalidArgument,
          "lp_oracle: matrix payloads are not supported");
  require(cfg.norm_u == NormFamily::ElementwiseL1 &&
              (!problem.has_channel() ||
               cfg.norm_w == NormFamily::ElementwiseL1),
          ErrorKind::InvalidArgument,
          "lp_oracle: only elementwise-l1 norms are supported");
  const int n = problem.grid.n;
  const int k = problem.payload;
  const double dx = problem.grid.dx;
  auto node = [&](int i, int j, int c) { return (i * n + j) * k + c; };

  MinCostFlow flow(n * n * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < k; ++c) {
        if (i + 1 < n) {
          flow.add_arc(node(i, j, c), node(i + 1, j, c), dx);
          flow.add_arc(node(i + 1, j, c), node(i, j, c), dx);
        }
        if (j + 1 < n) {
          flow.add_arc(node(i, j, c), node(i, j + 1, c), dx);
          flow.add_arc(node(i, j + 1, c), node(i, j, c), dx);
        }
      }

  if (problem.has_channel()) {
    // Recover the graph from the channel operator diag(1/c) D^T: row e has
    // +1/c_e at node a and -1/c_e at node b.
    const Eigen::MatrixXd& g = problem.channel->dense();
    for (int e = 0; e < g.rows(); ++e) {
      int a = -1, b = -1;
      for (int c = 0; c < g.cols(); ++c) {
        if (g(e, c) > 0.0) a = c;
        if (g(e, c) < 0.0) b = c;
      }
      require(a >= 0 && b >= 0, ErrorKind::InvalidArgument,
              "lp_oracle: channel operator is not a graph gradient");
      const double cost = cfg.alpha / g(e, a);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          flow.add_arc(node(i, j, a), node(i, j, b), cost);
          flow.add_arc(node(i, j, b), node(i, j, a), cost);
        }
    }
  }

  std::vector<double> supply(static_cast<std::size_t>(n) * n * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < k; ++c)
        supply[node(i, j, c)] =
            problem.lambda0.at(c, i, j) - problem.lambda1.at(c, i, j);
  return flow.solve(std::move(supply));
}

double lp_oracle_scalar(const ScalarDensity& l0, const ScalarDensity& l1) {
  SolverConfig cfg;
  cfg.norm_u = NormFamily::ElementwiseL1;
  return lp_oracle(TransportProblem::scalar(l0, l1), cfg);
}

double lp_oracle_vector(const VectorDensity& l0, const VectorDensity& l1,
                        const TransportGraph& graph, double alpha) {
  SolverConfig cfg;
  cfg.norm_u = NormFamily::ElementwiseL1;
  cfg.norm_w = NormFamily::ElementwiseL1;
  cfg.alpha = alpha;
  return lp_oracle(TransportProblem::vector(l0, l1, graph), cfg);
}

}  // namespace omt
