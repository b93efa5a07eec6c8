#include <vector>

#include "omt/kernels.hpp"
#include "omt/spatial.hpp"

namespace omt::kernels::reference {

namespace {

std::vector<double> pixel(const Field& f, int i, int j) {
  std::vector<double> out(f.components());
  for (int c = 0; c < f.components(); ++c) out[c] = f.at(c, i, j);
  return out;
}

Field combine(const Field& a, double sa, const Field& b, double sb) {
  Field out(a.n(), a.components());
  auto o = out.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t t = 0; t < o.size(); ++t) o[t] = sa * x[t] - sb * y[t];
  return out;
}

}  // namespace

void primal_update(const StepContext& ctx, const Field& phi,
                   const FluxField& u_old, const Field& w_old,
                   FluxField& u_new, Field& w_new) {
  const TransportProblem& pb = *ctx.problem;
  const int n = pb.grid.n;
  const int P = pb.payload;
  const int Q = pb.channel_size();
  const double mu = ctx.steps.mu;
  const double nu = ctx.steps.nu;
  const double scale_u = ctx.eps > 0.0 ? 1.0 / (1.0 + 2.0 * mu * ctx.eps) : 1.0;
  const double scale_w = ctx.eps > 0.0 ? 1.0 / (1.0 + 2.0 * nu * ctx.eps) : 1.0;

  const FluxField g = grad_x(phi, pb.grid);
  std::vector<double> ub(2 * P), wb(Q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < P; ++p) {
        ub[p] = u_old.ux.at(p, i, j) + mu * g.ux.at(p, i, j);
        ub[P + p] = u_old.uy.at(p, i, j) + mu * g.uy.at(p, i, j);
      }
      shrink_inplace(ub, mu, ctx.norm_u);
      for (int p = 0; p < P; ++p) {
        u_new.ux.at(p, i, j) = ub[p] * scale_u;
        u_new.uy.at(p, i, j) = ub[P + p] * scale_u;
      }
      if (Q == 0) continue;
      pb.channel->gradient(pixel(phi, i, j), wb);
      for (int q = 0; q < Q; ++q) wb[q] = w_old.at(q, i, j) + nu * wb[q];
      shrink_inplace(wb, ctx.alpha * nu, ctx.norm_w);
      for (int q = 0; q < Q; ++q) w_new.at(q, i, j) = wb[q] * scale_w;
    }
  }
  u_new.zero_ghosts();
}

void dual_update(const StepContext& ctx, const FluxField& u_old,
                 const FluxField& u_new, const Field& w_old,
                 const Field& w_new, Field& phi) {
  const TransportProblem& pb = *ctx.problem;
  const int n = pb.grid.n;
  const int P = pb.payload;
  const int Q = pb.channel_size();
  const double tau = ctx.steps.tau;

  FluxField bar;
  bar.ux = combine(u_new.ux, 2.0, u_old.ux, 1.0);
  bar.uy = combine(u_new.uy, 2.0, u_old.uy, 1.0);
  Field d = div_x(bar, pb.grid);
  if (Q > 0) {
    const Field wbar = combine(w_new, 2.0, w_old, 1.0);
    std::vector<double> dp(P);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int p = 0; p < P; ++p) dp[p] = d.at(p, i, j);
        pb.channel->add_divergence(pixel(wbar, i, j), 1.0, dp);
        for (int p = 0; p < P; ++p) d.at(p, i, j) = dp[p];
      }
    }
  }
  for (int p = 0; p < P; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        phi.at(p, i, j) +=
            tau * (d.at(p, i, j) +
                   (pb.lambda1.at(p, i, j) - pb.lambda0.at(p, i, j)));
}

}  // namespace omt::kernels::reference
