#include "paracalc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "paracalc/gpam.hpp"
#include "paracalc/io.hpp"
#include "paracalc/report.hpp"

namespace paracalc {
namespace {

namespace fs = std::filesystem;

struct ExperimentConfig {
  int dim = 1;
  int n = 1 << 12;
  int seeds = 8;
  std::uint64_t base_seed = 42;
  std::string partition = "smooth";
  std::string backend = "lp";
  int backend_b = 2;
  int backend_levels = 16;
  // solver block
  double T = 0.25;
  double dt = 0.25 / 128;
  double alpha = 0.6;
  double beta = 0.55;
  double fp_tol = 1e-8;
  int max_iters = 25;
  // noise block
  double noise_eps = 1e-2;
  double noise_amplitude = 0.2;
  std::uint64_t noise_seed = 7;
  std::string output_dir = "paracalc_out";
  int threads = 1;
};

void reject_unknown(const Json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw config_error("unknown config key '" + it.key() + "' in " + where);
  }
}

template <typename T>
void maybe(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig c;
  if (path.empty()) return c;
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(is);
  } catch (const std::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  reject_unknown(j, {"grid", "seeds", "base_seed", "partition", "backend", "solver",
                     "noise", "output_dir", "threads"},
                 "top level");
  if (j.contains("grid")) {
    reject_unknown(j["grid"], {"dim", "n"}, "grid");
    maybe(j["grid"], "dim", c.dim);
    maybe(j["grid"], "n", c.n);
  }
  maybe(j, "seeds", c.seeds);
  maybe(j, "base_seed", c.base_seed);
  maybe(j, "partition", c.partition);
  if (j.contains("backend")) {
    reject_unknown(j["backend"], {"name", "b", "levels"}, "backend");
    maybe(j["backend"], "name", c.backend);
    maybe(j["backend"], "b", c.backend_b);
    maybe(j["backend"], "levels", c.backend_levels);
  }
  if (j.contains("solver")) {
    reject_unknown(j["solver"], {"T", "dt", "alpha", "beta", "fp_tol", "max_iters"},
                   "solver");
    maybe(j["solver"], "T", c.T);
    maybe(j["solver"], "dt", c.dt);
    maybe(j["solver"], "alpha", c.alpha);
    maybe(j["solver"], "beta", c.beta);
    maybe(j["solver"], "fp_tol", c.fp_tol);
    maybe(j["solver"], "max_iters", c.max_iters);
  }
  if (j.contains("noise")) {
    reject_unknown(j["noise"], {"eps", "amplitude", "seed"}, "noise");
    maybe(j["noise"], "eps", c.noise_eps);
    maybe(j["noise"], "amplitude", c.noise_amplitude);
    maybe(j["noise"], "seed", c.noise_seed);
  }
  maybe(j, "output_dir", c.output_dir);
  maybe(j, "threads", c.threads);
  return c;
}

PartitionKind parse_partition(const std::string& s) {
  if (s == "smooth") return PartitionKind::smooth;
  if (s == "sharp") return PartitionKind::sharp;
  throw config_error("partition must be 'smooth' or 'sharp'");
}

std::vector<double> parse_alpha_list(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw config_error("bad exponent '" + tok + "' in --alphas");
    }
  }
  return out;
}

Nonlinearity parse_fn(const std::string& s) {
  if (s == "sin") return Nonlinearity::sine();
  if (s == "cos") return Nonlinearity::cosine();
  if (s == "tanh") return Nonlinearity::tanh_fn();
  if (s == "sech2") return Nonlinearity::sech2();
  if (s == "id") return Nonlinearity::identity();
  if (s == "one") return Nonlinearity::constant(1.0);
  throw config_error("unknown nonlinearity '" + s + "' (sin, cos, tanh, sech2, id, one)");
}

int threads_from_env(int fallback) {
  if (const char* env = std::getenv("PARACALC_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return fallback;
}

void write_metadata(const fs::path& dir) {
  Json meta;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  meta["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now).count();
  write_json(meta, dir / "metadata.json");
}

Field synth_or_load(const ExperimentConfig& c, const std::string& input, double alpha,
                    std::uint64_t seed) {
  if (!input.empty()) return load_pcf1(input);
  TorusGrid g(c.dim, c.n);
  return sample_field({alpha, seed}, g);
}

Field default_u0(const TorusGrid& g, double scale) {
  Array v(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    auto x = g.point(i);
    v[i] = scale * (g.dim == 1 ? std::cos(x[0]) : std::cos(x[0]) + std::cos(x[1]));
  }
  return Field(g, std::move(v));
}

int cmd_decompose(const ExperimentConfig& c, const std::string& input, double alpha,
                  std::uint64_t seed) {
  Field f = synth_or_load(c, input, alpha, seed);
  const auto p = PartitionScheme::make(f.grid(), parse_partition(c.partition));
  const auto d = decompose(f, p);
  fs::create_directories(c.output_dir);
  {
    std::ofstream os(fs::path(c.output_dir) / "blocks.csv");
    export_block_norms_csv(d, os);
  }
  Json rep;
  rep["schema"] = "report_v1";
  rep["command"] = "decompose";
  rep["n"] = f.grid().n;
  rep["dim"] = f.grid().dim;
  rep["partition"] = c.partition;
  const Field rec = reconstruct(d);
  const double err = (rec - f).sup_norm();
  rep["reconstruction_error"] = err;
  const double tol = 1e-10 * std::max(1.0, f.sup_norm());
  rep["pass"] = err <= tol;
  write_json(rep, fs::path(c.output_dir) / "report.json");
  write_metadata(c.output_dir);
  std::cout << (err <= tol ? "PASS" : "FAIL") << " decompose: reconstruction error " << err
            << "\n";
  return err <= tol ? 0 : 1;
}

int cmd_estimate(const ExperimentConfig& c, const std::string& input, double alpha,
                 std::uint64_t seed, const std::string& window_str) {
  Field f = synth_or_load(c, input, alpha, seed);
  const auto p = PartitionScheme::make(f.grid(), parse_partition(c.partition));
  JWindow w = default_window(p.top());
  if (!window_str.empty()) {
    if (std::sscanf(window_str.c_str(), "%d:%d", &w.first, &w.second) != 2)
      throw config_error("--window expects lo:hi");
  }
  const auto fit = estimate_exponent(f, w, p);
  fs::create_directories(c.output_dir);
  Json rep;
  rep["schema"] = "report_v1";
  rep["command"] = "estimate-regularity";
  rep["fit"] = exponent_fit_json(fit);
  write_json(rep, fs::path(c.output_dir) / "report.json");
  write_metadata(c.output_dir);
  std::cout << "estimated_alpha " << fit.estimated_alpha << " (r2 " << fit.r_squared
            << ")\n";
  return 0;
}

int cmd_verify_operator(const ExperimentConfig& c, const std::string& name,
                        const std::string& alphas_str) {
  VerifyOptions opts;
  opts.seeds = c.seeds;
  opts.grid = TorusGrid(c.dim, c.n);
  opts.base_seed = c.base_seed;
  opts.partition = parse_partition(c.partition);
  opts.threads = threads_from_env(c.threads);
  const auto rep = verify_operator(name, parse_alpha_list(alphas_str), opts);
  fs::create_directories(c.output_dir);
  const fs::path path = fs::path(c.output_dir) / ("verify_" + name + ".json");
  write_json(operator_report_json(rep), path);
  write_metadata(c.output_dir);
  std::cout << (rep.pass ? "PASS " : "FAIL ") << name << ": estimated "
            << rep.fit.estimated_alpha << " vs theory " << rep.theory_exponent << " (tol "
            << rep.tolerance << ", r2 " << rep.fit.r_squared << ")\n";
  if (!rep.pass) std::cout << "failing report: " << path.string() << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_taylor(const ExperimentConfig& c, const std::string& fn_name, double alpha) {
  const Nonlinearity fn = parse_fn(fn_name);
  TorusGrid g(c.dim, c.n);
  const auto p = PartitionScheme::make(g, parse_partition(c.partition));
  fs::create_directories(c.output_dir);
  Json rep;
  rep["schema"] = "report_v1";
  rep["command"] = "taylor-remainder";
  rep["fn"] = fn.label;
  rep["input_alpha"] = alpha;
  bool all_pass = true;
  Json orders = Json::array();
  for (int order = 1; order <= 3; ++order) {
    double acc = 0;
    for (int s = 0; s < c.seeds; ++s) {
      Field u = sample_field({alpha, rng::mix64(c.base_seed, std::uint64_t(s))}, g);
      const auto ex = taylor_expand(fn, u, order, p);
      acc += estimate_exponent(ex.remainder, p).estimated_alpha;
    }
    const double mean = acc / c.seeds;
    const double theory = std::min((order + 1) * alpha, 2.0);  // window resolution cap
    const bool pass = std::abs(mean - theory) <= 0.2;
    all_pass = all_pass && pass;
    Json o;
    o["order"] = order;
    o["mean_remainder_alpha"] = mean;
    o["theory"] = theory;
    o["pass"] = pass;
    orders.push_back(o);
    std::cout << (pass ? "PASS" : "FAIL") << " taylor order " << order << ": remainder alpha "
              << mean << " vs " << theory << "\n";
  }
  rep["orders"] = orders;
  rep["pass"] = all_pass;
  write_json(rep, fs::path(c.output_dir) / "taylor_remainder.json");
  write_metadata(c.output_dir);
  return all_pass ? 0 : 1;
}

int cmd_build_enhancement(const ExperimentConfig& c, double alpha, int steps) {
  TorusGrid g(c.dim, c.n);
  const auto p = PartitionScheme::make(g, parse_partition(c.partition));
  Field zeta = c.noise_amplitude *
               mollify(sample_field({alpha - 2.0, c.noise_seed}, g), c.noise_eps);
  const TimeGrid t = make_time_grid(c.T, steps);
  const EnhancedNoise en = build_enhancement(zeta, t, p);
  save_enhancement(en, c.output_dir, alpha, c.noise_seed, c.noise_eps);
  write_metadata(c.output_dir);
  std::cout << "enhancement written to " << c.output_dir << " (" << t.size()
            << " slices)\n";
  return 0;
}

int cmd_solve_gpam(const ExperimentConfig& c, const std::string& fn_name, double alpha) {
  const Nonlinearity fn = parse_fn(fn_name);
  TorusGrid g(c.dim, c.n);
  const auto p = PartitionScheme::make(g, parse_partition(c.partition));
  SolveOptions opts;
  opts.T = c.T;
  opts.dt = c.dt;
  opts.max_iters = c.max_iters;
  opts.fp_tol = c.fp_tol;
  opts.alpha = alpha;
  opts.beta = c.beta;
  opts.validate();

  Field zeta = c.noise_amplitude *
               mollify(sample_field({alpha - 2.0, c.noise_seed}, g), c.noise_eps);
  const TimeGrid t = opts.timegrid();
  const EnhancedNoise en = build_enhancement(zeta, t, p);
  const Field u0 = default_u0(g, 0.5);

  const SolveResult sol = solve_gpam(u0, en, fn, opts);
  const TimeField ref = reference_solve(u0, zeta, fn, opts);
  const double scale = std::max(ref.sup_norm(), 1e-30);
  const double gap = sup_norm_difference(sol.uhat.u, ref) / scale;

  fs::create_directories(c.output_dir);
  write_trace_csv(sol.residual_trace, fs::path(c.output_dir) / "trace.csv");
  Json rep;
  rep["schema"] = "report_v1";
  rep["command"] = "solve-gpam";
  rep["fn"] = fn.label;
  rep["alpha"] = alpha;
  rep["eps"] = c.noise_eps;
  rep["amplitude"] = c.noise_amplitude;
  rep["n"] = c.n;
  rep["dim"] = c.dim;
  rep["T"] = c.T;
  rep["dt"] = c.dt;
  rep["iterations"] = sol.iterations;
  rep["final_residual"] = sol.residual_trace.back();
  rep["oracle_gap_rel"] = gap;
  const bool pass = gap <= 1e-3 && sol.iterations <= 12;
  rep["pass"] = pass;
  write_json(rep, fs::path(c.output_dir) / "solve_gpam.json");
  write_metadata(c.output_dir);
  std::cout << (pass ? "PASS" : "FAIL") << " solve-gpam: oracle gap " << gap << " in "
            << sol.iterations << " iterations\n";
  return pass ? 0 : 1;
}

int cmd_schauder(const ExperimentConfig& c, double beta, double eps) {
  TorusGrid g(c.dim, c.n);
  const auto p = PartitionScheme::make(g, parse_partition(c.partition));
  const auto rep = schauder_check(beta, eps, c.seeds, g, c.T, p, c.base_seed);
  fs::create_directories(c.output_dir);
  Json j;
  j["schema"] = "report_v1";
  j["command"] = "schauder-check";
  j["beta"] = rep.beta;
  j["eps"] = rep.eps;
  j["mean_out_alpha"] = rep.mean_out_alpha;
  j["gain"] = rep.gain;
  j["per_seed_out_alpha"] = rep.per_seed_out_alpha;
  j["pass"] = rep.pass;
  write_json(j, fs::path(c.output_dir) / "schauder.json");
  write_metadata(c.output_dir);
  std::cout << (rep.pass ? "PASS" : "FAIL") << " schauder: gain " << rep.gain << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_full_suite(const ExperimentConfig& c) {
  VerifyOptions opts;
  opts.seeds = c.seeds;
  opts.grid = TorusGrid(c.dim, c.n);
  opts.base_seed = c.base_seed;
  opts.partition = parse_partition(c.partition);
  opts.threads = threads_from_env(c.threads);
  fs::create_directories(c.output_dir);
  bool all_pass = true;
  Json summary = Json::array();
  for (const auto& entry : operator_table()) {
    const auto rep = verify_operator(entry.name, {}, opts);
    write_json(operator_report_json(rep),
               fs::path(c.output_dir) / ("verify_" + entry.name + ".json"));
    Json s;
    s["operator"] = entry.name;
    s["estimated_alpha"] = rep.fit.estimated_alpha;
    s["theory"] = rep.theory_exponent;
    s["pass"] = rep.pass;
    summary.push_back(s);
    all_pass = all_pass && rep.pass;
    std::cout << (rep.pass ? "PASS " : "FAIL ") << entry.name << ": "
              << rep.fit.estimated_alpha << " vs " << rep.theory_exponent << "\n";
  }
  Json j;
  j["schema"] = "report_v1";
  j["command"] = "full-suite";
  j["operators"] = summary;
  j["pass"] = all_pass;
  write_json(j, fs::path(c.output_dir) / "full_suite.json");
  write_metadata(c.output_dir);
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"paracontrolled-calculus operator toolkit on the flat torus"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON experiment config (flags override)");

  ExperimentConfig cfg;
  std::string input, window_str, op_name, alphas_str, fn_name = "sin";
  double alpha = 0.5, beta = -1.4, eps = 0.05;
  int steps = 64;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "points per axis (power of two)");
    sub->add_option("--dim", cfg.dim, "1 or 2");
    sub->add_option("--partition", cfg.partition, "smooth|sharp");
    sub->add_option("--seeds", cfg.seeds, "ensemble size");
    sub->add_option("--base-seed", cfg.base_seed, "ensemble base seed");
    sub->add_option("--out", cfg.output_dir, "output directory");
  };

  auto* dec = app.add_subcommand("decompose", "dyadic block norms of a field");
  add_common(dec);
  dec->add_option("--input", input, "PCF1 field file (else synthesized)");
  dec->add_option("--alpha", alpha, "synthesis exponent");
  dec->add_option("--seed", cfg.noise_seed, "synthesis seed");

  auto* est = app.add_subcommand("estimate-regularity", "exponent regression of a field");
  add_common(est);
  est->add_option("--input", input, "PCF1 field file (else synthesized)");
  est->add_option("--alpha", alpha, "synthesis exponent");
  est->add_option("--seed", cfg.noise_seed, "synthesis seed");
  est->add_option("--window", window_str, "j-window lo:hi");

  auto* ver = app.add_subcommand("verify-operator", "continuity exponent check");
  add_common(ver);
  ver->add_option("name", op_name, "registered operator")->required();
  ver->add_option("--alphas", alphas_str, "comma-separated input exponents");

  auto* tay = app.add_subcommand("taylor-remainder", "expansion remainder gains");
  add_common(tay);
  tay->add_option("--fn", fn_name, "nonlinearity");
  tay->add_option("--alpha", alpha, "input exponent");

  auto* enh = app.add_subcommand("build-enhancement", "construct and save enhanced noise");
  add_common(enh);
  enh->add_option("--alpha", alpha, "regularity parameter (noise at alpha-2)");
  enh->add_option("--eps", cfg.noise_eps, "mollification");
  enh->add_option("--seed", cfg.noise_seed, "noise seed");
  enh->add_option("--amplitude", cfg.noise_amplitude, "noise amplitude");
  enh->add_option("--T", cfg.T, "horizon");
  enh->add_option("--steps", steps, "time steps");

  auto* gp = app.add_subcommand("solve-gpam", "paracontrolled fixed point vs oracle");
  add_common(gp);
  gp->add_option("--fn", fn_name, "nonlinearity");
  gp->add_option("--alpha", alpha, "regularity parameter");
  gp->add_option("--eps", cfg.noise_eps, "mollification");
  gp->add_option("--seed", cfg.noise_seed, "noise seed");
  gp->add_option("--amplitude", cfg.noise_amplitude, "noise amplitude");
  gp->add_option("--T", cfg.T, "horizon");
  gp->add_option("--dt", cfg.dt, "time step");
  gp->add_option("--fp-tol", cfg.fp_tol, "Picard tolerance");
  gp->add_option("--max-iters", cfg.max_iters, "Picard cap");
  gp->add_option("--beta", cfg.beta, "secondary exponent");

  auto* sch = app.add_subcommand("schauder-check", "heat resolvent smoothing gain");
  add_common(sch);
  sch->add_option("--beta", beta, "input exponent");
  sch->add_option("--eps", eps, "epsilon slack");
  sch->add_option("--T", cfg.T, "horizon");

  auto* full = app.add_subcommand("full-suite", "every registered operator once");
  add_common(full);

  // defaults tuned per command
  alpha = 0.5;
  gp->parse_complete_callback([&] {
    if (gp->count("--alpha") == 0) alpha = 0.6;
    if (gp->count("--n") == 0) cfg.n = 1 << 8;
  });
  tay->parse_complete_callback([&] {
    if (tay->count("--alpha") == 0) alpha = 0.5;
  });

  try {
    // load config first so explicit flags win
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") cfg = load_config(argv[i + 1]);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (dec->parsed()) return cmd_decompose(cfg, input, alpha, cfg.noise_seed);
    if (est->parsed()) return cmd_estimate(cfg, input, alpha, cfg.noise_seed, window_str);
    if (ver->parsed()) return cmd_verify_operator(cfg, op_name, alphas_str);
    if (tay->parsed()) return cmd_taylor(cfg, fn_name, alpha);
    if (enh->parsed()) return cmd_build_enhancement(cfg, alpha, steps);
    if (gp->parsed()) return cmd_solve_gpam(cfg, fn_name, alpha);
    if (sch->parsed()) return cmd_schauder(cfg, beta, eps);
    if (full->parsed()) return cmd_full_suite(cfg);
  } catch (const hypothesis_violation& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace paracalc
