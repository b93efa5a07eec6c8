#include "omt/pdhg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "omt/error.hpp"
#include "omt/kernels.hpp"

namespace omt {

void SolverConfig::validate() const {
  require(tau > 0.0, ErrorKind::InvalidArgument, "tau must be positive");
  require(tol_gap > 0.0 && tol_feas > 0.0, ErrorKind::InvalidArgument,
          "tolerances must be positive");
  require(max_iters > 0, ErrorKind::InvalidArgument,
          "max_iters must be positive");
  require(alpha > 0.0, ErrorKind::InvalidArgument, "alpha must be positive");
  require(eps_reg >= 0.0, ErrorKind::InvalidArgument,
          "eps_reg must be nonnegative");
  require(check_every > 0, ErrorKind::InvalidArgument,
          "check_every must be positive");
  require(threads >= 0, ErrorKind::InvalidArgument,
          "threads must be nonnegative");
  require(eps_reg == 0.0 || (norm_u != NormFamily::NuclearSum &&
                             norm_w != NormFamily::NuclearSum),
          ErrorKind::InvalidArgument,
          "eps_reg > 0 is not supported with the nuclear norm");
}

double default_tau(int n) { return n <= 64 ? 1.0 : 3.0; }

double default_tau_matrix(int n) {
  if (n <= 64) return 10.0;
  return n <= 128 ? 30.0 : 60.0;
}

StepSizes step_sizes_scalar(const GridSpec& grid, double tau) {
  require(tau > 0.0, ErrorKind::InvalidArgument, "tau must be positive");
  const double m = grid.n - 1;
  return {1.0 / (16.0 * tau * m * m), 0.0, tau};
}

StepSizes step_sizes_channel(const GridSpec& grid, double lambda_channel,
                             double tau) {
  require(tau > 0.0, ErrorKind::InvalidArgument, "tau must be positive");
  require(lambda_channel > 0.0, ErrorKind::InvalidArgument,
          "channel operator has zero spectrum");
  const double m = grid.n - 1;
  return {1.0 / (32.0 * tau * m * m), 1.0 / (4.0 * tau * lambda_channel), tau};
}

StepSizes step_sizes_vector(const GridSpec& grid, const TransportGraph& graph,
                            double tau) {
  return step_sizes_channel(grid, lambda_max_graph(graph), tau);
}

StepSizes step_sizes_matrix(const GridSpec& grid, const LindbladSet& ls,
                            double tau) {
  return step_sizes_channel(grid, lambda_max_L(ls.matrices()), tau);
}

// ------------------------------------------------------------ problems

namespace {

void check_masses(double m0, double m1) {
  require(std::abs(m0 - m1) <= 1e-9, ErrorKind::Infeasible,
          "source and target masses differ");
}

void check_grids(const GridSpec& a, const GridSpec& b) {
  require(a == b, ErrorKind::DimensionMismatch,
          "source and target live on different grids");
}

}  // namespace

TransportProblem TransportProblem::scalar(const ScalarDensity& l0,
                                          const ScalarDensity& l1) {
  check_grids(l0.grid(), l1.grid());
  check_masses(total_mass(l0), total_mass(l1));
  TransportProblem pb;
  pb.grid = l0.grid();
  pb.payload = 1;
  pb.u_shape = PayloadShape::real(2, 1);
  pb.lambda0 = l0.values();
  pb.lambda1 = l1.values();
  return pb;
}

TransportProblem TransportProblem::vector(const VectorDensity& l0,
                                          const VectorDensity& l1,
                                          const TransportGraph& graph) {
  check_grids(l0.grid(), l1.grid());
  require(l0.channels() == l1.channels() && l0.channels() == graph.nodes(),
          ErrorKind::DimensionMismatch,
          "channel count does not match the graph");
  check_masses(total_mass(l0), total_mass(l1));
  const int k = graph.nodes();
  TransportProblem pb;
  pb.grid = l0.grid();
  pb.payload = k;
  pb.u_shape = PayloadShape::real(2, k);
  pb.w_shape = PayloadShape::real(1, graph.edges());
  pb.channel = std::make_shared<const ChannelOperator>(
      graph_channel_operator(graph));
  pb.lambda0 = l0.values();
  pb.lambda1 = l1.values();
  return pb;
}

TransportProblem TransportProblem::matrix(const MatrixDensity& l0,
                                          const MatrixDensity& l1,
                                          const LindbladSet& ls) {
  check_grids(l0.grid(), l1.grid());
  require(l0.dim() == l1.dim() && l0.dim() == ls.dim(),
          ErrorKind::DimensionMismatch,
          "matrix dimension does not match the Lindblad set");
  check_masses(total_mass(l0), total_mass(l1));
  const int k = ls.dim();
  TransportProblem pb;
  pb.grid = l0.grid();
  pb.payload = k * k;
  pb.u_shape = PayloadShape::hermitian(2, k);
  pb.w_shape = PayloadShape::skew(ls.size(), k);
  pb.channel = std::make_shared<const ChannelOperator>(
      lindblad_channel_operator(ls));
  pb.lambda0 = l0.coords();
  pb.lambda1 = l1.coords();
  return pb;
}

SolverState SolverState::zeros(const TransportProblem& problem) {
  SolverState s;
  const int n = problem.grid.n;
  s.u = FluxField(n, problem.payload);
  s.w = Field(n, problem.channel_size());
  s.phi = Field(n, problem.payload);
  return s;
}

// ------------------------------------------------------------- metrics

namespace {

GapReport report_from_sums(const kernels::GapSums& g, const SolverConfig& cfg) {
  GapReport r;
  r.primal = g.primal_norms;
  double s = std::max({1.0, g.max_dual_u, g.max_dual_w / cfg.alpha});
  r.dual = g.linear / s;
  if (cfg.eps_reg > 0.0) {
    r.primal += cfg.eps_reg * g.squares;
    r.dual = std::max(r.dual, g.linear - g.penalty / (4.0 * cfg.eps_reg));
  }
  r.gap_ratio = (r.primal - r.dual) / std::max(r.primal, 1e-30);
  r.feas_residual = g.source2 > 0.0 ? std::sqrt(g.feas2 / g.source2)
                                    : std::sqrt(g.feas2);
  return r;
}

void check_norms(const TransportProblem& problem, const SolverConfig& cfg) {
  require(valid_pairing(cfg.norm_u, problem.u_shape),
          ErrorKind::InvalidArgument,
          "norm " + norm_family_name(cfg.norm_u) +
              " does not apply to the spatial flux");
  if (problem.has_channel())
    require(valid_pairing(cfg.norm_w, problem.w_shape),
            ErrorKind::InvalidArgument,
            "norm " + norm_family_name(cfg.norm_w) +
                " does not apply to the channel flux");
}

}  // namespace

GapReport duality_gap(const TransportProblem& problem, const SolverState& state,
                      const SolverConfig& cfg) {
  cfg.validate();
  check_norms(problem, cfg);
  const auto ctx = kernels::StepContext::make(problem, StepSizes{}, cfg);
  return report_from_sums(kernels::gap_sums(ctx, state.phi, state.u, state.w),
                          cfg);
}

double residual_Rk(const TransportProblem& problem, const SolverState& prev,
                   const SolverState& next, const StepSizes& steps) {
  kernels::StepContext ctx;
  ctx.problem = &problem;
  ctx.steps = steps;
  return kernels::fixed_point_residual(ctx, prev.u, next.u, prev.w, next.w,
                                       prev.phi, next.phi);
}

// --------------------------------------------------------------- solve

SolveResult solve(const TransportProblem& problem, const StepSizes& steps,
                  const SolverConfig& cfg) {
  cfg.validate();
  check_norms(problem, cfg);
  require(steps.mu > 0.0 && steps.tau > 0.0 &&
              (!problem.has_channel() || steps.nu > 0.0),
          ErrorKind::InvalidArgument, "step sizes must be positive");

  const auto start = std::chrono::steady_clock::now();
  const auto ctx = kernels::StepContext::make(problem, steps, cfg);
  const bool reference = cfg.backend == KernelBackend::Reference;

  SolveResult out;
  SolverState& st = out.state;
  st = SolverState::zeros(problem);
  SolveReport& rep = out.report;
  rep.steps = steps;

  FluxField u_next = st.u;
  Field w_next = st.w;
  Field phi_prev;

  auto check = [&](double residual) {
    const GapReport g =
        report_from_sums(kernels::gap_sums(ctx, st.phi, st.u, st.w), cfg);
    for (double v : {g.primal, g.dual, g.feas_residual, residual})
      require(std::isfinite(v), ErrorKind::Numerical,
              "solver iterates diverged (non-finite value)");
    st.primal_value = g.primal;
    st.dual_value = g.dual;
    st.gap_ratio = g.gap_ratio;
    st.feas_residual = g.feas_residual;
    st.residual = residual;
    rep.history.push_back(
        {st.iter, g.primal, g.dual, g.gap_ratio, g.feas_residual, residual});
    return std::abs(g.gap_ratio) <= cfg.tol_gap &&
           g.feas_residual <= cfg.tol_feas;
  };

  bool converged = check(0.0);
  while (!converged && st.iter < cfg.max_iters) {
    const int it = st.iter + 1;
    const bool checkpoint = it % cfg.check_every == 0 || it == cfg.max_iters;
    if (checkpoint) phi_prev = st.phi;
    if (reference) {
      kernels::reference::primal_update(ctx, st.phi, st.u, st.w, u_next,
                                        w_next);
      kernels::reference::dual_update(ctx, st.u, u_next, st.w, w_next, st.phi);
    } else {
      kernels::primal_update(ctx, st.phi, st.u, st.w, u_next, w_next);
      kernels::dual_update(ctx, st.u, u_next, st.w, w_next, st.phi);
    }
    double residual = 0.0;
    if (checkpoint)
      residual = kernels::fixed_point_residual(ctx, st.u, u_next, st.w, w_next,
                                               phi_prev, st.phi);
    std::swap(st.u, u_next);
    std::swap(st.w, w_next);
    st.iter = it;
    if (checkpoint) converged = check(residual);
  }

  rep.converged = converged;
  rep.iterations = st.iter;
  rep.transport_value = std::max(st.primal_value, 0.0);
  rep.gap_ratio = st.gap_ratio;
  rep.feas_residual = st.feas_residual;
  rep.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return out;
}

SolveResult solve_scalar(const ScalarDensity& l0, const ScalarDensity& l1,
                         const SolverConfig& cfg) {
  cfg.validate();
  const auto pb = TransportProblem::scalar(l0, l1);
  return solve(pb, step_sizes_scalar(pb.grid, cfg.tau), cfg);
}

SolveResult solve_vector(const VectorDensity& l0, const VectorDensity& l1,
                         const TransportGraph& graph, const SolverConfig& cfg) {
  cfg.validate();
  const auto pb = TransportProblem::vector(l0, l1, graph);
  return solve(pb,
               step_sizes_channel(pb.grid, pb.channel->lambda_max(), cfg.tau),
               cfg);
}

SolveResult solve_matrix(const MatrixDensity& l0, const MatrixDensity& l1,
                         const LindbladSet& ls, const SolverConfig& cfg) {
  cfg.validate();
  const auto pb = TransportProblem::matrix(l0, l1, ls);
  return solve(pb,
               step_sizes_channel(pb.grid, pb.channel->lambda_max(), cfg.tau),
               cfg);
}

}  // namespace omt
