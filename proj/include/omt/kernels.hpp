#pragma once

#include "omt/pdhg.hpp"

// One PDHG iteration is two sweeps over the pixels: the primal sweep updates
// the spatial and channel fluxes from the current potential, the dual sweep
// updates the potential from the over-relaxed fluxes. Every pixel is written
// by exactly one loop iteration and reads only fixed neighbours, so the
// parallel kernels produce the same bits for any thread count.

namespace omt::kernels {

struct StepContext {
  const TransportProblem* problem = nullptr;
  NormChoice norm_u;
  NormChoice norm_w;
  StepSizes steps;
  double alpha = 1.0;
  double eps = 0.0;
  int threads = 0;

  static StepContext make(const TransportProblem& problem,
                          const StepSizes& steps, const SolverConfig& cfg);
  int thread_count() const;
};

/// u_new = shrink_u(u_old + mu grad phi, mu), w_new = shrink_w(w_old + nu G phi,
/// alpha nu), both divided by the regularization factor when eps > 0.
void primal_update(const StepContext& ctx, const Field& phi,
                   const FluxField& u_old, const Field& w_old,
                   FluxField& u_new, Field& w_new);

/// phi += tau (div(2 u_new - u_old) + div_c(2 w_new - w_old) + lambda1 - lambda0)
void dual_update(const StepContext& ctx, const FluxField& u_old,
                 const FluxField& u_new, const Field& w_old,
                 const Field& w_new, Field& phi);

namespace reference {

// Serial versions built from the whole-field operators (grad_x, div_x and the
// channel operator). Kept as the correctness baseline for the parallel sweeps.
void primal_update(const StepContext& ctx, const Field& phi,
                   const FluxField& u_old, const Field& w_old,
                   FluxField& u_new, Field& w_new);
void dual_update(const StepContext& ctx, const FluxField& u_old,
                 const FluxField& u_new, const Field& w_old,
                 const Field& w_new, Field& phi);

}  // namespace reference

struct GapSums {
  double primal_norms = 0.0;   // sum ||u_ij||_u + alpha ||w_ij||_w
  double squares = 0.0;        // sum ||u_ij||_2^2 + ||w_ij||_2^2
  double linear = 0.0;         // <phi, lambda1 - lambda0>
  double penalty = 0.0;        // sum dist(grad phi, B*)^2 + dist(G phi, alpha B*)^2
  double feas2 = 0.0;          // ||div u + div_c w - (lambda0 - lambda1)||^2
  double source2 = 0.0;        // ||lambda0 - lambda1||^2
  double max_dual_u = 0.0;     // max_ij ||grad phi_ij||_u*
  double max_dual_w = 0.0;     // max_ij ||G phi_ij||_w*
};

/// Per-row partial sums combined in row order (thread-count independent).
GapSums gap_sums(const StepContext& ctx, const Field& phi, const FluxField& u,
                 const Field& w);

double fixed_point_residual(const StepContext& ctx, const FluxField& u_prev,
                            const FluxField& u_next, const Field& w_prev,
                            const Field& w_next, const Field& phi_prev,
                            const Field& phi_next);

}  // namespace omt::kernels
