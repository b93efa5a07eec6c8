#include <omp.h>

#include <algorithm>
#include <vector>

#include "omt/kernels.hpp"

namespace omt::kernels {

StepContext StepContext::make(const TransportProblem& problem,
                              const StepSizes& steps,
                              const SolverConfig& cfg) {
  StepContext ctx;
  ctx.problem = &problem;
  ctx.norm_u = problem.norm_u(cfg.norm_u);
  ctx.norm_w = problem.norm_w(cfg.norm_w);
  ctx.steps = steps;
  ctx.alpha = cfg.alpha;
  ctx.eps = cfg.eps_reg;
  ctx.threads = cfg.threads;
  return ctx;
}

int StepContext::thread_count() const {
  return threads > 0 ? threads : omp_get_max_threads();
}

namespace {


std::vector<const double*> cplanes(const Field& f) {
  std::vector<const double*> out(f.components());
  for (int c = 0; c < f.components(); ++c) out[c] = f.plane(c).data();
  return out;
}

std::vector<double*> mplanes(Field& f) {
  std::vector<double*> out(f.components());
  for (int c = 0; c < f.components(); ++c) out[c] = f.plane(c).data();
  return out;
}

double sumsq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

void primal_update(const StepContext& ctx, const Field& phi,
                   const FluxField& u_old, const Field& w_old,
                   FluxField& u_new, Field& w_new) {
  const TransportProblem& pb = *ctx.problem;
  const int n = pb.grid.n;
  const int P = pb.payload;
  const int Q = pb.channel_size();
  const double inv = 1.0 / pb.grid.dx;
  const double mu = ctx.steps.mu;
  const double nu = ctx.steps.nu;
  const double scale_u = ctx.eps > 0.0 ? 1.0 / (1.0 + 2.0 * mu * ctx.eps) : 1.0;
  const double scale_w = ctx.eps > 0.0 ? 1.0 / (1.0 + 2.0 * nu * ctx.eps) : 1.0;

  const auto ph = cplanes(phi);
  const auto uxo = cplanes(u_old.ux);
  const auto uyo = cplanes(u_old.uy);
  const auto uxn = mplanes(u_new.ux);
  const auto uyn = mplanes(u_new.uy);
  const auto wo = cplanes(w_old);
  const auto wn = mplanes(w_new);

#pragma omp parallel num_threads(ctx.thread_count())
  {
    std::vector<double> ub(2 * P), pbuf(P), wb(Q);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const bool has_x = i + 1 < n;
      for (int j = 0; j < n; ++j) {
        const bool has_y = j + 1 < n;
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        for (int p = 0; p < P; ++p) {
          const double f0 = ph[p][idx];
          const double gx = has_x ? (ph[p][idx + n] - f0) * inv : 0.0;
          const double gy = has_y ? (ph[p][idx + 1] - f0) * inv : 0.0;
          ub[p] = uxo[p][idx] + mu * gx;
          ub[P + p] = uyo[p][idx] + mu * gy;
        }
        detail::shrink_inplace_unchecked(ub, mu, ctx.norm_u);
        for (int p = 0; p < P; ++p) {
          uxn[p][idx] = has_x ? ub[p] * scale_u : 0.0;
          uyn[p][idx] = has_y ? ub[P + p] * scale_u : 0.0;
        }
        if (Q == 0) continue;
        for (int p = 0; p < P; ++p) pbuf[p] = ph[p][idx];
        pb.channel->gradient(pbuf, wb);
        for (int q = 0; q < Q; ++q) wb[q] = wo[q][idx] + nu * wb[q];
        detail::shrink_inplace_unchecked(wb, ctx.alpha * nu, ctx.norm_w);
        for (int q = 0; q < Q; ++q) wn[q][idx] = wb[q] * scale_w;
      }
    }
  }
}

void dual_update(const StepContext& ctx, const FluxField& u_old,
                 const FluxField& u_new, const Field& w_old,
                 const Field& w_new, Field& phi) {
  const TransportProblem& pb = *ctx.problem;
  const int n = pb.grid.n;
  const int P = pb.payload;
  const int Q = pb.channel_size();
  const double inv = 1.0 / pb.grid.dx;
  const double tau = ctx.steps.tau;

  const auto uxo = cplanes(u_old.ux);
  const auto uyo = cplanes(u_old.uy);
  const auto uxn = cplanes(u_new.ux);
  const auto uyn = cplanes(u_new.uy);
  const auto wo = cplanes(w_old);
  const auto wn = cplanes(w_new);
  const auto l0 = cplanes(pb.lambda0);
  const auto l1 = cplanes(pb.lambda1);
  const auto ph = mplanes(phi);

#pragma omp parallel num_threads(ctx.thread_count())
  {
    std::vector<double> d(P), yb(Q);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        for (int p = 0; p < P; ++p) {
          double v = (2.0 * uxn[p][idx] - uxo[p][idx]) +
                     (2.0 * uyn[p][idx] - uyo[p][idx]);
          if (i > 0) v -= 2.0 * uxn[p][idx - n] - uxo[p][idx - n];
          if (j > 0) v -= 2.0 * uyn[p][idx - 1] - uyo[p][idx - 1];
          d[p] = v * inv;
        }
        if (Q > 0) {
          for (int q = 0; q < Q; ++q) yb[q] = 2.0 * wn[q][idx] - wo[q][idx];
          pb.channel->add_divergence(yb, 1.0, d);
        }
        for (int p = 0; p < P; ++p)
          ph[p][idx] += tau * (d[p] + (l1[p][idx] - l0[p][idx]));
      }
    }
  }
}

GapSums gap_sums(const StepContext& ctx, const Field& phi, const FluxField& u,
                 const Field& w) {
  const TransportProblem& pb = *ctx.problem;
  const int n = pb.grid.n;
  const int P = pb.payload;
  const int Q = pb.channel_size();
  const double inv = 1.0 / pb.grid.dx;
  const bool regularized = ctx.eps > 0.0;

  const auto ph = cplanes(phi);
  const auto ux = cplanes(u.ux);
  const auto uy = cplanes(u.uy);
  const auto wp = cplanes(w);
  const auto l0 = cplanes(pb.lambda0);
  const auto l1 = cplanes(pb.lambda1);

  std::vector<GapSums> rows(n);

#pragma omp parallel num_threads(ctx.thread_count())
  {
    std::vector<double> ub(2 * P), gb(2 * P), pbuf(P), wb(Q), cb(Q), r(P);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      GapSums acc;
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        for (int p = 0; p < P; ++p) {
          ub[p] = ux[p][idx];
          ub[P + p] = uy[p][idx];
          const double f0 = ph[p][idx];
          gb[p] = i + 1 < n ? (ph[p][idx + n] - f0) * inv : 0.0;
          gb[P + p] = j + 1 < n ? (ph[p][idx + 1] - f0) * inv : 0.0;
          pbuf[p] = f0;

          double v = ux[p][idx] + uy[p][idx];
          if (i > 0) v -= ux[p][idx - n];
          if (j > 0) v -= uy[p][idx - 1];
          r[p] = v * inv;

          const double src = l1[p][idx] - l0[p][idx];
          acc.linear += f0 * src;
          acc.source2 += src * src;
        }
        acc.primal_norms += detail::norm_value_unchecked(ub, ctx.norm_u);
        acc.squares += sumsq(ub);
        acc.max_dual_u = std::max(acc.max_dual_u,
                                  detail::dual_norm_unchecked(gb, ctx.norm_u));
        if (regularized) {
          detail::shrink_inplace_unchecked(gb, 1.0, ctx.norm_u);
          acc.penalty += sumsq(gb);
        }
        if (Q > 0) {
          for (int q = 0; q < Q; ++q) wb[q] = wp[q][idx];
          acc.primal_norms +=
              ctx.alpha * detail::norm_value_unchecked(wb, ctx.norm_w);
          acc.squares += sumsq(wb);
          pb.channel->add_divergence(wb, 1.0, r);
          pb.channel->gradient(pbuf, cb);
          acc.max_dual_w = std::max(acc.max_dual_w,
                                    detail::dual_norm_unchecked(cb, ctx.norm_w));
          if (regularized) {
            detail::shrink_inplace_unchecked(cb, ctx.alpha, ctx.norm_w);
            acc.penalty += sumsq(cb);
          }
        }
        for (int p = 0; p < P; ++p) {
          // constraint: div u + div_c w = lambda0 - lambda1
          const double e = r[p] - (l0[p][idx] - l1[p][idx]);
          acc.feas2 += e * e;
        }
      }
      rows[i] = acc;
    }
  }

  GapSums total;
  for (const auto& r : rows) {
    total.primal_norms += r.primal_norms;
    total.squares += r.squares;
    total.linear += r.linear;
    total.penalty += r.penalty;
    total.feas2 += r.feas2;
    total.source2 += r.source2;
    total.max_dual_u = std::max(total.max_dual_u, r.max_dual_u);
    total.max_dual_w = std::max(total.max_dual_w, r.max_dual_w);
  }
  return total;
}

double fixed_point_residual(const StepContext& ctx, const FluxField& u_prev,
                            const FluxField& u_next, const Field& w_prev,
                            const Field& w_next, const Field& phi_prev,
                            const Field& phi_next) {
  const TransportProblem& pb = *ctx.problem;
  const int n = pb.grid.n;
  const int P = pb.payload;
  const int Q = pb.channel_size();
  const double inv = 1.0 / pb.grid.dx;

  const auto uxa = cplanes(u_prev.ux);
  const auto uya = cplanes(u_prev.uy);
  const auto uxb = cplanes(u_next.ux);
  const auto uyb = cplanes(u_next.uy);
  const auto wa = cplanes(w_prev);
  const auto wb = cplanes(w_next);
  const auto pa = cplanes(phi_prev);
  const auto pbn = cplanes(phi_next);

  struct Row {
    double du = 0.0, dw = 0.0, dphi = 0.0, cross = 0.0;
  };
  std::vector<Row> rows(n);

#pragma omp parallel num_threads(ctx.thread_count())
  {
    std::vector<double> d(P), y(Q);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      Row acc;
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        for (int p = 0; p < P; ++p) {
          const double ex = uxb[p][idx] - uxa[p][idx];
          const double ey = uyb[p][idx] - uya[p][idx];
          acc.du += ex * ex + ey * ey;
          double v = ex + ey;
          if (i > 0) v -= uxb[p][idx - n] - uxa[p][idx - n];
          if (j > 0) v -= uyb[p][idx - 1] - uya[p][idx - 1];
          d[p] = v * inv;
        }
        if (Q > 0) {
          for (int q = 0; q < Q; ++q) {
            y[q] = wb[q][idx] - wa[q][idx];
            acc.dw += y[q] * y[q];
          }
          pb.channel->add_divergence(y, 1.0, d);
        }
        for (int p = 0; p < P; ++p) {
          const double e = pbn[p][idx] - pa[p][idx];
          acc.dphi += e * e;
          acc.cross += e * d[p];
        }
      }
      rows[i] = acc;
    }
  }

  Row t;
  for (const auto& r : rows) {
    t.du += r.du;
    t.dw += r.dw;
    t.dphi += r.dphi;
    t.cross += r.cross;
  }
  double res = t.du / ctx.steps.mu + t.dphi / ctx.steps.tau - 2.0 * t.cross;
  if (Q > 0) res += t.dw / ctx.steps.nu;
  return res;
}

}  // namespace omt::kernels
