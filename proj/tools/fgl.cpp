#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fgl/emit.hpp"
#include "fgl/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_override;
  std::optional<long long> seed_override;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config = true) {
  auto* cfg = cmd->add_option("--config", opts.config_path,
                              "path to the run configuration file");
  if (needs_config) cfg->required();
  cmd->add_option("--out", opts.out_override, "output directory (overrides config)");
  cmd->add_option("--seed", opts.seed_override, "seed (overrides config)");
  cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fgl::RunConfig load_config(const CommonOptions& opts, fgl::RunMode mode) {
  std::string text;
  try {
    text = read_file(opts.config_path);
  } catch (const std::exception& e) {
    throw fgl::ConfigError(e.what());
  }
  fgl::RunConfig cfg = fgl::parse_config(text);
  if (cfg.mode_explicit) {
    const bool solve_pair =
        (mode == fgl::RunMode::solve_min_j || mode == fgl::RunMode::solve_max_i) &&
        (cfg.mode == fgl::RunMode::solve_min_j ||
         cfg.mode == fgl::RunMode::solve_max_i);
    if (cfg.mode != mode && !solve_pair) {
      throw fgl::ConfigError("config mode '" + fgl::to_string(cfg.mode) +
                             "' does not match the subcommand");
    }
  } else {
    cfg.mode = mode;
  }
  if (!opts.out_override.empty()) cfg.out_dir = opts.out_override;
  if (opts.seed_override) {
    if (*opts.seed_override < 0) throw fgl::ConfigError("seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(*opts.seed_override);
  }
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int run_solve_like(const CommonOptions& opts, fgl::RunMode default_mode) {
  const auto t0 = std::chrono::steady_clock::now();
  fgl::RunConfig cfg = load_config(opts, default_mode);
  const fgl::Grid1D grid = cfg.make_grid();
  const fgl::YoungFunction F = cfg.make_young();
  const fgl::ModularWorkspace ws(F, grid, cfg.s);
  fgl::SolverConfig solver = cfg.make_solver(grid);

  const fgl::EigenPair result = [&]() -> fgl::EigenPair {
    switch (cfg.mode) {
      case fgl::RunMode::solve_min_j:
        return fgl::minimize_J_on_I(ws, solver);
      case fgl::RunMode::solve_max_i:
        return fgl::maximize_I_on_J(ws, solver);
      case fgl::RunMode::minimax_k2:
        return fgl::minimax_k2(ws, solver, cfg.minimax_basis_pairs,
                               cfg.minimax_theta_samples);
      default:
        throw fgl::ConfigError("unsupported mode for this subcommand");
    }
  }();
  fgl::write_solve_outputs(cfg.out_dir, cfg, result, seconds_since(t0));
  if (!opts.quiet) {
    std::printf("lambda = %.12g  (J = %.12g, I = %.12g, %s, %d iterations)\n",
                result.lambda, result.value_J, result.value_I,
                result.converged ? "converged" : "NOT converged",
                result.iterations);
    std::printf("results written to %s\n", cfg.out_dir.c_str());
  }
  return kExitOk;
}

int run_sweep(const CommonOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  fgl::RunConfig cfg = load_config(opts, fgl::RunMode::sweep);
  const fgl::Grid1D grid = cfg.make_grid();
  const fgl::YoungFunction F = cfg.make_young();
  const fgl::ModularWorkspace ws(F, grid, cfg.s);
  fgl::SolverConfig solver = cfg.make_solver(grid);
  const fgl::SweepResult sweep =
      fgl::sweep_alpha(ws, solver, cfg.alphas, cfg.objective);
  fgl::write_sweep_outputs(cfg.out_dir, cfg, sweep, seconds_since(t0));
  if (!opts.quiet) {
    std::size_t converged = 0;
    for (const auto& row : sweep.rows) converged += row.converged ? 1 : 0;
    std::printf("%zu rows (%zu converged), inf_lambda = %.12g\n",
                sweep.rows.size(), converged, sweep.inf_lambda);
    std::printf("results written to %s\n", cfg.out_dir.c_str());
  }
  return kExitOk;
}

int run_oracle(const CommonOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  fgl::RunConfig cfg = load_config(opts, fgl::RunMode::oracle);
  const fgl::Grid1D grid = cfg.make_grid();
  const fgl::SpectrumP2 spectrum =
      fgl::oracle_spectrum_p2(grid, cfg.s, cfg.make_bc(grid));
  fgl::write_oracle_outputs(cfg.out_dir, cfg, spectrum, seconds_since(t0));
  if (!opts.quiet) {
    std::printf("%zu eigenvalues, smallest = %.12g\n",
                spectrum.eigenvalues.size(), spectrum.eigenvalues.front());
    std::printf("results written to %s\n", cfg.out_dir.c_str());
  }
  return kExitOk;
}

int run_verify_cmd(const CommonOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  fgl::RunConfig cfg = load_config(opts, fgl::RunMode::verify);
  const fgl::Grid1D grid = cfg.make_grid();
  const fgl::YoungFunction F = cfg.make_young();
  const fgl::VerifyReport report = fgl::run_verify(
      F, grid, cfg.s, static_cast<std::size_t>(cfg.verify_samples), cfg.seed);
  fgl::write_verify_outputs(cfg.out_dir, cfg, report, seconds_since(t0));
  if (!opts.quiet) std::fputs(fgl::render_verify_report(report).c_str(), stdout);
  return report.all_hard_pass() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational eigenvalues of the discretized fractional "
               "g-Laplacian (Dirichlet / Neumann / Robin)"};
  app.require_subcommand(1);

  CommonOptions solve_opts, sweep_opts, minimax_opts, verify_opts, oracle_opts;
  std::string report_dir;

  CLI::App* solve = app.add_subcommand(
      "solve", "constrained eigen-solve (mode solve-minJ or solve-maxI)");
  add_common(solve, solve_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "solve across an alpha list");
  add_common(sweep, sweep_opts);
  CLI::App* minimax = app.add_subcommand(
      "minimax2", "odd-loop upper bound for the second minimax level");
  add_common(minimax, minimax_opts);
  CLI::App* verify = app.add_subcommand(
      "verify", "run the inequality suites; exit 1 on hard failure");
  add_common(verify, verify_opts);
  CLI::App* oracle = app.add_subcommand(
      "oracle", "dense reference spectrum for the quadratic case");
  add_common(oracle, oracle_opts);
  CLI::App* report =
      app.add_subcommand("report", "render a results directory as text");
  report->add_option("dir", report_dir, "results directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (solve->parsed()) return run_solve_like(solve_opts, fgl::RunMode::solve_min_j);
    if (sweep->parsed()) return run_sweep(sweep_opts);
    if (minimax->parsed())
      return run_solve_like(minimax_opts, fgl::RunMode::minimax_k2);
    if (verify->parsed()) return run_verify_cmd(verify_opts);
    if (oracle->parsed()) return run_oracle(oracle_opts);
    if (report->parsed()) {
      std::fputs(fgl::render_results_report(report_dir).c_str(), stdout);
      return kExitOk;
    }
  } catch (const fgl::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const fgl::StructureError& e) {
    std::fprintf(stderr, "structure error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIoError;
  } catch (const std::exception& e) {
    // json parse failures and the like: treat as unreadable input
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIoError;
  }
  return kExitOk;
}
