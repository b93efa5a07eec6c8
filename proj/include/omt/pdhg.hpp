#pragma once

#include <memory>
#include <vector>

#include "omt/channel_operator.hpp"
#include "omt/field.hpp"
#include "omt/graph.hpp"
#include "omt/grid.hpp"
#include "omt/lindblad.hpp"
#include "omt/shrink.hpp"

namespace omt {

enum class KernelBackend {
  Parallel,   // OpenMP kernels, per-row partial reductions
  Reference,  // serial kernels composed from the whole-field operators
};

struct SolverConfig {
  double tau = 1.0;
  double tol_gap = 1e-3;
  double tol_feas = 1e-5;
  int max_iters = 200000;
  double alpha = 1.0;
  NormFamily norm_u = NormFamily::GroupRows;
  NormFamily norm_w = NormFamily::ElementwiseL1;
  double eps_reg = 0.0;
  int check_every = 100;
  int threads = 0;  // 0: OpenMP default
  KernelBackend backend = KernelBackend::Parallel;

  void validate() const;
};

/// Dual step defaults tuned per grid size. Scalar and vector transport: 1 up
/// to n = 64, 3 above. Matrix transport: 10 up to n = 64, 30 up to n = 128,
/// 60 above.
double default_tau(int n);
double default_tau_matrix(int n);

struct StepSizes {
  double mu = 0.0;   // primal step for the spatial flux
  double nu = 0.0;   // primal step for the channel flux (unused for scalar)
  double tau = 0.0;  // dual step
};

/// mu = 1 / (16 tau (n-1)^2).
StepSizes step_sizes_scalar(const GridSpec& grid, double tau);
/// mu = 1 / (32 tau (n-1)^2), nu = 1 / (4 tau lambda_max(-Laplacian_channel)).
StepSizes step_sizes_channel(const GridSpec& grid, double lambda_channel,
                             double tau);
StepSizes step_sizes_vector(const GridSpec& grid, const TransportGraph& graph,
                            double tau);
StepSizes step_sizes_matrix(const GridSpec& grid, const LindbladSet& ls,
                            double tau);

/// Problem data shared by the three solvers. The payload has P components per
/// pixel (1, k, or k^2); the spatial flux has 2P and the channel flux Q. The
/// per-pixel flux block is [ux_0 .. ux_(P-1), uy_0 .. uy_(P-1)], so the rows of
/// u_shape are the two spatial directions.
struct TransportProblem {
  GridSpec grid;
  int payload = 1;
  PayloadShape u_shape;
  PayloadShape w_shape;
  std::shared_ptr<const ChannelOperator> channel;  // null for scalar transport
  Field lambda0;
  Field lambda1;

  static TransportProblem scalar(const ScalarDensity& l0,
                                 const ScalarDensity& l1);
  static TransportProblem vector(const VectorDensity& l0,
                                 const VectorDensity& l1,
                                 const TransportGraph& graph);
  static TransportProblem matrix(const MatrixDensity& l0,
                                 const MatrixDensity& l1,
                                 const LindbladSet& ls);

  bool has_channel() const { return static_cast<bool>(channel); }
  int channel_size() const { return channel ? channel->out_size() : 0; }
  NormChoice norm_u(NormFamily f) const { return {f, u_shape}; }
  NormChoice norm_w(NormFamily f) const { return {f, w_shape}; }
};

struct SolverState {
  FluxField u;
  Field w;
  Field phi;
  int iter = 0;
  double residual = 0.0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap_ratio = 1.0;
  double feas_residual = 1.0;

  static SolverState zeros(const TransportProblem& problem);
};

struct HistoryRecord {
  int iter = 0;
  double primal = 0.0;
  double dual = 0.0;
  double gap_ratio = 0.0;
  double feas_residual = 0.0;
  double residual = 0.0;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double transport_value = 0.0;
  double gap_ratio = 0.0;
  double feas_residual = 0.0;
  StepSizes steps;
  std::vector<HistoryRecord> history;
  double wall_time = 0.0;  // seconds
};

struct SolveResult {
  SolveReport report;
  SolverState state;
};

struct GapReport {
  double primal = 0.0;
  double dual = 0.0;
  double gap_ratio = 0.0;
  double feas_residual = 0.0;
};

/// Primal objective, feasibility-rescaled dual objective, relative gap and
/// relative constraint residual of `state`.
GapReport duality_gap(const TransportProblem& problem, const SolverState& state,
                      const SolverConfig& cfg);

/// Fixed-point residual of the PDHG map between consecutive iterates:
///   |du|^2/mu + |dw|^2/nu + |dphi|^2/tau - 2 <dphi, div du + div_c dw>.
double residual_Rk(const TransportProblem& problem, const SolverState& prev,
                   const SolverState& next, const StepSizes& steps);

/// Runs PDHG from zero initial iterates until both the gap ratio and the
/// feasibility residual meet their tolerances, or max_iters is reached.
SolveResult solve(const TransportProblem& problem, const StepSizes& steps,
                  const SolverConfig& cfg);

/// Throws Infeasible when the total masses differ by more than 1e-9.
SolveResult solve_scalar(const ScalarDensity& l0, const ScalarDensity& l1,
                         const SolverConfig& cfg);
SolveResult solve_vector(const VectorDensity& l0, const VectorDensity& l1,
                         const TransportGraph& graph, const SolverConfig& cfg);
SolveResult solve_matrix(const MatrixDensity& l0, const MatrixDensity& l1,
                         const LindbladSet& ls, const SolverConfig& cfg);

}  // namespace omt
