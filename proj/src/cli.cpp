#include "omt/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "omt/error.hpp"
#include "omt/io.hpp"
#include "omt/pdhg.hpp"
#include "omt/problems.hpp"

namespace omt::cli {

using nlohmann::json;

namespace {

enum class Kind { Scalar, Vector, Matrix };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Scalar: return "scalar";
    case Kind::Vector: return "vector";
    case Kind::Matrix: return "matrix";
  }
  return "";
}

struct SolveArgs {
  std::string manifest;
  std::string lambda0, lambda1, graph, lindblad;
  std::string out_metrics, out_flux, out_quiver;
  std::string norm_u, norm_w;
  double alpha = 1.0;
  double tau = 0.0;  // 0: grid-size default
  double tol = 1e-3;
  double tol_feas = 1e-5;
  double eps_reg = 0.0;
  int max_iters = 200000;
  int check_every = 100;
  int threads = 0;
  bool normalize = false;
  bool no_timing = false;
};

int threads_from_env() {
  const char* env = std::getenv("OMT_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  require(*end == '\0' && v >= 0 && v <= 4096, ErrorKind::InvalidArgument,
          "OMT_THREADS must be a nonnegative integer");
  return static_cast<int>(v);
}

// Values given on the command line win; anything left unset is taken from
// the manifest.
void apply_manifest(CLI::App& app, SolveArgs& a) {
  const json m = json::parse(io::read_text(a.manifest), nullptr, false);
  require(!m.is_discarded() && m.is_object(), ErrorKind::Io,
          "'" + a.manifest + "' is not a JSON object");
  if (m.contains("format_version"))
    require(m["format_version"] == io::kFormatVersion, ErrorKind::Io,
            "'" + a.manifest + "': unsupported format_version");
  auto take = [&](const char* flag, const json& section, const char* key,
                  auto& var) {
    if (app.get_option(flag)->count() > 0 || !section.contains(key)) return;
    try {
      var = section.at(key).get<std::decay_t<decltype(var)>>();
    } catch (const json::exception&) {
      fail(ErrorKind::Io, "'" + a.manifest + "': bad value for '" + key + "'");
    }
  };
  const json empty = json::object();
  const json& in = m.contains("inputs") ? m["inputs"] : empty;
  const json& cfg = m.contains("config") ? m["config"] : empty;
  const json& out = m.contains("outputs") ? m["outputs"] : empty;
  take("--lambda0", in, "lambda0", a.lambda0);
  take("--lambda1", in, "lambda1", a.lambda1);
  take("--graph", in, "graph", a.graph);
  take("--lindblad", in, "lindblad", a.lindblad);
  take("--normalize", in, "normalize", a.normalize);
  take("--alpha", cfg, "alpha", a.alpha);
  take("--tau", cfg, "tau", a.tau);
  take("--tol", cfg, "tol_gap", a.tol);
  take("--tol-feas", cfg, "tol_feas", a.tol_feas);
  take("--eps-reg", cfg, "eps_reg", a.eps_reg);
  take("--max-iters", cfg, "max_iters", a.max_iters);
  take("--check-every", cfg, "check_every", a.check_every);
  take("--norm-u", cfg, "norm_u", a.norm_u);
  take("--norm-w", cfg, "norm_w", a.norm_w);
  take("--threads", m, "threads", a.threads);
  take("--out-metrics", out, "metrics", a.out_metrics);
  take("--out-flux", out, "flux", a.out_flux);
  take("--out-quiver", out, "quiver", a.out_quiver);
  if (app.get_option("--no-timing")->count() == 0 && m.contains("timing"))
    a.no_timing = !m["timing"].get<bool>();
}

void add_solve_options(CLI::App& sub, SolveArgs& a, Kind kind) {
  sub.add_option("--manifest", a.manifest, "JSON run manifest");
  sub.add_option("--lambda0", a.lambda0, "source density (OMTF, or CSV)");
  sub.add_option("--lambda1", a.lambda1, "target density (OMTF, or CSV)");
  if (kind == Kind::Vector)
    sub.add_option("--graph", a.graph, "graph JSON (default: unit triangle)");
  else
    sub.add_option("--graph", a.graph)->group("");
  if (kind == Kind::Matrix)
    sub.add_option("--lindblad", a.lindblad,
                   "Lindblad JSON (default: the k = 3 diffusion pair)");
  else
    sub.add_option("--lindblad", a.lindblad)->group("");
  sub.add_option("--alpha", a.alpha, "channel flux weight");
  sub.add_option("--norm-u", a.norm_u, "spatial flux norm: l2, l12, l1, l1nuc");
  sub.add_option("--norm-w", a.norm_w, "channel flux norm: l2, l1, l1nuc");
  sub.add_option("--tau", a.tau, "dual step (default depends on n)");
  sub.add_option("--tol", a.tol, "relative duality gap tolerance");
  sub.add_option("--tol-feas", a.tol_feas, "relative constraint residual");
  sub.add_option("--max-iters", a.max_iters, "iteration cap");
  sub.add_option("--threads", a.threads, "OpenMP threads (0: default)");
  sub.add_option("--eps-reg", a.eps_reg, "quadratic regularization weight");
  sub.add_option("--check-every", a.check_every,
                 "iterations between convergence checks");
  sub.add_option("--out-metrics", a.out_metrics, "metrics JSON path");
  sub.add_option("--out-flux", a.out_flux,
                 "prefix for flux and potential OMTF files");
  sub.add_option("--out-quiver", a.out_quiver, "quiver CSV path");
  sub.add_flag("--normalize", a.normalize, "rescale inputs to unit mass");
  sub.add_flag("--no-timing", a.no_timing,
               "omit wall-clock fields so metrics are reproducible bytewise");
}

json history_json(const SolveReport& rep) {
  json h = json::array();
  for (const auto& r : rep.history)
    h.push_back({{"iter", r.iter},
                 {"primal", r.primal},
                 {"dual", r.dual},
                 {"gap_ratio", r.gap_ratio},
                 {"feas_residual", r.feas_residual},
                 {"residual", r.residual}});
  return h;
}

void write_flux(const std::string& prefix, Kind kind, int k,
                const SolverState& st) {
  if (kind == Kind::Matrix) {
    io::write_omtf(prefix + "_ux.omtf", io::omtf_from_coords(st.u.ux, k, false));
    io::write_omtf(prefix + "_uy.omtf", io::omtf_from_coords(st.u.uy, k, false));
    io::write_omtf(prefix + "_phi.omtf", io::omtf_from_coords(st.phi, k, false));
    const int P = k * k;
    for (int s = 0; s < st.w.components() / P; ++s) {
      Field ws(st.w.n(), P);
      for (int p = 0; p < P; ++p) {
        auto src = st.w.plane(s * P + p);
        std::copy(src.begin(), src.end(), ws.plane(p).begin());
      }
      io::write_omtf(prefix + "_w" + std::to_string(s + 1) + ".omtf",
                     io::omtf_from_coords(ws, k, true));
    }
    return;
  }
  auto write = [&](const std::string& name, const Field& f) {
    io::write_omtf(prefix + name, f.components() == 1 && kind == Kind::Scalar
                                      ? io::omtf_from_scalar(f)
                                      : io::omtf_from_vector(f));
  };
  write("_ux.omtf", st.u.ux);
  write("_uy.omtf", st.u.uy);
  write("_phi.omtf", st.phi);
  if (kind == Kind::Vector) io::write_omtf(prefix + "_w.omtf",
                                           io::omtf_from_vector(st.w));
}

int cmd_solve(CLI::App& app, SolveArgs a, Kind kind) {
  if (!a.manifest.empty()) apply_manifest(app, a);
  require(!a.lambda0.empty() && !a.lambda1.empty(), ErrorKind::InvalidArgument,
          "--lambda0 and --lambda1 are required");
  if (app.get_option("--threads")->count() == 0 && a.threads == 0)
    a.threads = threads_from_env();

  SolverConfig cfg;
  cfg.alpha = a.alpha;
  cfg.tol_gap = a.tol;
  cfg.tol_feas = a.tol_feas;
  cfg.eps_reg = a.eps_reg;
  cfg.max_iters = a.max_iters;
  cfg.check_every = a.check_every;
  cfg.threads = a.threads;
  const char* default_u = kind == Kind::Vector ? "l12" : "l2";
  if (a.norm_u.empty()) a.norm_u = default_u;
  if (a.norm_w.empty()) a.norm_w = "l1";
  cfg.norm_u = parse_norm_family(a.norm_u);
  cfg.norm_w = parse_norm_family(a.norm_w);

  // Load everything before any output is produced.
  SolveResult res;
  int k = 1, n = 0;
  auto pick_tau = [&](int grid_n, bool matrix) {
    if (a.tau <= 0.0 && app.get_option("--tau")->count() == 0)
      a.tau = matrix ? default_tau_matrix(grid_n) : default_tau(grid_n);
    cfg.tau = a.tau;
    cfg.validate();
  };
  if (kind == Kind::Scalar) {
    const auto l0 = io::load_scalar(a.lambda0, a.normalize);
    const auto l1 = io::load_scalar(a.lambda1, a.normalize);
    n = l0.grid().n;
    pick_tau(n, false);
    res = solve_scalar(l0, l1, cfg);
  } else if (kind == Kind::Vector) {
    const auto l0 = io::load_vector(a.lambda0, a.normalize);
    const auto l1 = io::load_vector(a.lambda1, a.normalize);
    const TransportGraph g =
        a.graph.empty() ? TransportGraph::triangle() : io::load_graph(a.graph);
    n = l0.grid().n;
    k = l0.channels();
    pick_tau(n, false);
    res = solve_vector(l0, l1, g, cfg);
  } else {
    const auto l0 = io::load_matrix(a.lambda0, a.normalize);
    const auto l1 = io::load_matrix(a.lambda1, a.normalize);
    k = l0.dim();
    require(!a.lindblad.empty() || k == 3, ErrorKind::InvalidArgument,
            "--lindblad is required unless k = 3");
    const LindbladSet ls =
        a.lindblad.empty() ? LindbladSet::dti_pair() : io::load_lindblad(a.lindblad);
    n = l0.grid().n;
    pick_tau(n, true);
    res = solve_matrix(l0, l1, ls, cfg);
  }

  const SolveReport& rep = res.report;
  json config = {{"kind", kind_name(kind)},
                 {"n", n},
                 {"k", k},
                 {"lambda0", a.lambda0},
                 {"lambda1", a.lambda1},
                 {"normalize", a.normalize},
                 {"tau", cfg.tau},
                 {"mu", rep.steps.mu},
                 {"tol_gap", cfg.tol_gap},
                 {"tol_feas", cfg.tol_feas},
                 {"max_iters", cfg.max_iters},
                 {"alpha", cfg.alpha},
                 {"norm_u", a.norm_u},
                 {"eps_reg", cfg.eps_reg},
                 {"check_every", cfg.check_every},
                 {"threads", cfg.threads}};
  if (kind != Kind::Scalar) {
    config["nu"] = rep.steps.nu;
    config["norm_w"] = a.norm_w;
  }
  if (kind == Kind::Vector) config["graph"] = a.graph.empty() ? "triangle" : a.graph;
  if (kind == Kind::Matrix)
    config["lindblad"] = a.lindblad.empty() ? "dti-pair" : a.lindblad;

  json metrics = {{"format_version", io::kFormatVersion},
                  {"command", std::string("solve-") + kind_name(kind)},
                  {"transport_value", rep.transport_value},
                  {"iterations", rep.iterations},
                  {"converged", rep.converged},
                  {"gap_ratio", rep.gap_ratio},
                  {"feas_residual", rep.feas_residual},
                  {"primal", res.state.primal_value},
                  {"dual", res.state.dual_value},
                  {"config", config},
                  {"history", history_json(rep)}};
  if (!a.no_timing) {
    metrics["wall_time"] = rep.wall_time;
    metrics["time_per_iter"] =
        rep.iterations > 0 ? rep.wall_time / rep.iterations : 0.0;
  }

  if (!a.out_metrics.empty())
    io::write_text(a.out_metrics, metrics.dump(2) + "\n");
  if (!a.out_flux.empty()) write_flux(a.out_flux, kind, k, res.state);
  if (!a.out_quiver.empty())
    io::write_quiver_csv(a.out_quiver, GridSpec(n), res.state.u);

  std::cout << std::setprecision(8) << "value " << rep.transport_value
            << "  iterations " << rep.iterations << "  gap "
            << rep.gap_ratio << "  feas " << rep.feas_residual << "  "
            << (rep.converged ? "converged" : "NOT converged") << '\n';
  return rep.converged ? kOk : kNotConverged;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::string scene, preset, out;
  int n = 64;
};

int cmd_gen(CLI::App& app, const GenArgs& a) {
  require(a.scene.empty() != a.preset.empty(), ErrorKind::InvalidArgument,
          "give exactly one of --scene and --preset");
  io::Scene s;
  if (!a.scene.empty()) {
    s = io::load_scene(a.scene);
    if (app.get_option("--n")->count() > 0) s.n = a.n;
  } else {
    s.n = a.n;
    if (a.preset == "rgb-source" || a.preset == "rgb-target") {
      s.kind = "disks";
      s.disks = a.preset == "rgb-source" ? presets::rgb_source()
                                         : presets::rgb_target();
    } else if (a.preset == "dti0" || a.preset == "dti1" || a.preset == "dti2") {
      s.kind = "blobs";
      s.blobs = a.preset == "dti0"   ? presets::dti_lambda0()
                : a.preset == "dti1" ? presets::dti_lambda1()
                                     : presets::dti_lambda2();
    } else {
      fail(ErrorKind::InvalidArgument,
           "unknown preset '" + a.preset +
               "' (expected rgb-source, rgb-target, dti0, dti1, dti2)");
    }
  }
  if (s.kind == "gaussians" && a.out.size() >= 4 &&
      a.out.compare(a.out.size() - 4, 4, ".csv") == 0) {
    io::write_scalar_csv(a.out, gen_scalar_gaussians(s.bumps, s.n).values());
  } else {
    io::write_scene_field(s, a.out);
  }
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite = "vector";
  std::vector<int> grids{32, 64, 128};
  std::string out;
  double tau = 0.0;
  double tol = 1e-3;
  int max_iters = 200000;
  int threads = 0;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    io::write_text(path, text);
}

int cmd_bench(CLI::App& app, BenchArgs a) {
  require(a.suite == "vector" || a.suite == "matrix",
          ErrorKind::InvalidArgument, "--suite must be vector or matrix");
  if (app.get_option("--threads")->count() == 0) a.threads = threads_from_env();
  std::ostringstream os;
  os << std::setprecision(10)
     << "grid,iterations,time_per_iter_us,total_time_s,tau,value,converged\n";
  bool all = true;
  for (int n : a.grids) {
    SolverConfig cfg;
    cfg.tol_gap = a.tol;
    cfg.max_iters = a.max_iters;
    cfg.threads = a.threads;
    SolveResult r;
    if (a.suite == "vector") {
      cfg.tau = a.tau > 0.0 ? a.tau : default_tau(n);
      cfg.norm_u = NormFamily::GroupRows;
      r = solve_vector(gen_rgb_disks(presets::rgb_source(), n),
                       gen_rgb_disks(presets::rgb_target(), n),
                       TransportGraph::triangle(), cfg);
    } else {
      cfg.tau = a.tau > 0.0 ? a.tau
                            : presets::dti_tau(presets::DtiPair::Colocated01, n, 1.0);
      cfg.norm_u = NormFamily::EuclideanAll;
      r = solve_matrix(gen_matrix_blobs(presets::dti_lambda0(), n),
                       gen_matrix_blobs(presets::dti_lambda1(), n),
                       LindbladSet::dti_pair(), cfg);
    }
    const auto& rep = r.report;
    all = all && rep.converged;
    os << n << ',' << rep.iterations << ','
       << 1e6 * rep.wall_time / std::max(rep.iterations, 1) << ','
       << rep.wall_time << ',' << cfg.tau << ',' << rep.transport_value << ','
       << (rep.converged ? 1 : 0) << '\n';
  }
  emit(a.out, os.str());
  return all ? kOk : kNotConverged;
}

// -------------------------------------------------------- dti-distances

struct DtiArgs {
  std::vector<double> alphas{10.0, 3.0, 1.0, 0.3, 0.1};
  int n = 32;
  double tau = 0.0;
  double tol = 1e-3;
  int max_iters = 200000;
  int threads = 0;
  std::string out;
};

int cmd_dti_distances(CLI::App& app, DtiArgs a) {
  if (app.get_option("--threads")->count() == 0) a.threads = threads_from_env();
  const MatrixDensity l0 = gen_matrix_blobs(presets::dti_lambda0(), a.n);
  const MatrixDensity l1 = gen_matrix_blobs(presets::dti_lambda1(), a.n);
  const MatrixDensity l2 = gen_matrix_blobs(presets::dti_lambda2(), a.n);
  const LindbladSet ls = LindbladSet::dti_pair();
  std::ostringstream os;
  os << std::setprecision(10) << "alpha,M01,M02,M12,converged\n";
  bool all = true;
  for (double alpha : a.alphas) {
    SolverConfig cfg;
    cfg.alpha = alpha;
    cfg.tol_gap = a.tol;
    cfg.max_iters = a.max_iters;
    cfg.threads = a.threads;
    cfg.norm_u = NormFamily::EuclideanAll;
    auto run = [&](const MatrixDensity& x, const MatrixDensity& y,
                   presets::DtiPair pair) {
      cfg.tau = a.tau > 0.0 ? a.tau : presets::dti_tau(pair, a.n, alpha);
      return solve_matrix(x, y, ls, cfg).report;
    };
    const auto r01 = run(l0, l1, presets::DtiPair::Colocated01);
    const auto r02 = run(l0, l2, presets::DtiPair::Translated02);
    const auto r12 = run(l1, l2, presets::DtiPair::Mixed12);
    const bool ok = r01.converged && r02.converged && r12.converged;
    all = all && ok;
    os << alpha << ',' << r01.transport_value << ',' << r02.transport_value
       << ',' << r12.transport_value << ',' << (ok ? 1 : 0) << '\n';
  }
  emit(a.out, os.str());
  return all ? kOk : kNotConverged;
}

// ----------------------------------------------------------- graph-info

int cmd_graph_info(const std::string& path) {
  const TransportGraph g =
      path.empty() ? TransportGraph::triangle() : io::load_graph(path);
  Eigen::IOFormat fmt(6, 0, "  ", "\n", "  ", "");
  std::cout << "nodes " << g.nodes() << "  edges " << g.edges() << "\n";
  for (int e = 0; e < g.edges(); ++e)
    std::cout << "  e" << e + 1 << ": " << g.edge_list()[e].first + 1 << " -> "
              << g.edge_list()[e].second + 1 << "  cost " << g.costs()[e]
              << '\n';
  std::cout << "incidence D\n"
            << build_incidence(g).format(fmt) << "\nLaplacian\n"
            << graph_laplacian(g).format(fmt) << "\nlambda_max(-Laplacian) "
            << std::setprecision(12) << lambda_max_graph(g) << '\n';
  return kOk;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::Numerical ? kNumericalError : kInputError;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Optimal mass transport for scalar, vector and matrix densities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "omt 1.0");

  SolveArgs scalar_args, vector_args, matrix_args;
  auto* scalar = app.add_subcommand("solve-scalar", "scalar transport");
  auto* vector = app.add_subcommand("solve-vector", "vector transport");
  auto* matrix = app.add_subcommand("solve-matrix", "matrix transport");
  add_solve_options(*scalar, scalar_args, Kind::Scalar);
  add_solve_options(*vector, vector_args, Kind::Vector);
  add_solve_options(*matrix, matrix_args, Kind::Matrix);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "rasterize a scene or preset to OMTF");
  gen->add_option("--scene", gen_args.scene, "scene JSON");
  gen->add_option("--preset", gen_args.preset,
                  "rgb-source, rgb-target, dti0, dti1 or dti2");
  gen->add_option("--n", gen_args.n, "grid size");
  gen->add_option("--out", gen_args.out, "output path")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "iteration counts per grid size");
  bench->add_option("--suite", bench_args.suite, "vector or matrix");
  bench->add_option("--grids", bench_args.grids, "grid sizes")->delimiter(',');
  bench->add_option("--tau", bench_args.tau, "dual step (default per n)");
  bench->add_option("--tol", bench_args.tol, "relative duality gap tolerance");
  bench->add_option("--max-iters", bench_args.max_iters, "iteration cap");
  bench->add_option("--threads", bench_args.threads, "OpenMP threads");
  bench->add_option("--out", bench_args.out, "CSV path (default stdout)");

  DtiArgs dti_args;
  auto* dti = app.add_subcommand("dti-distances", "pairwise distances of the DTI fields per alpha");
  dti->add_option("--alphas", dti_args.alphas, "alpha values")->delimiter(',');
  dti->add_option("--n", dti_args.n, "grid size");
  dti->add_option("--tau", dti_args.tau, "dual step for every pair (default per pair, n and alpha)");
  dti->add_option("--tol", dti_args.tol, "relative duality gap tolerance");
  dti->add_option("--max-iters", dti_args.max_iters, "iteration cap");
  dti->add_option("--threads", dti_args.threads, "OpenMP threads");
  dti->add_option("--out", dti_args.out, "CSV path (default stdout)");

  std::string graph_path;
  auto* ginfo = app.add_subcommand("graph-info", "incidence, Laplacian, lambda_max");
  ginfo->add_option("--graph", graph_path, "graph JSON (default: unit triangle)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*scalar) return cmd_solve(*scalar, scalar_args, Kind::Scalar);
    if (*vector) return cmd_solve(*vector, vector_args, Kind::Vector);
    if (*matrix) return cmd_solve(*matrix, matrix_args, Kind::Matrix);
    if (*gen) return cmd_gen(*gen, gen_args);
    if (*bench) return cmd_bench(*bench, bench_args);
    if (*dti) return cmd_dti_distances(*dti, dti_args);
    if (*ginfo) return cmd_graph_info(graph_path);
  } catch (const Error& e) {
    std::cerr << "omt: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "omt: " << e.what() << '\n';
    return kNumericalError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"omt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace omt::cli
