#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgl/solver.hpp"

namespace fgl {

enum class RunMode {
  solve_min_j,
  solve_max_i,
  minimax_k2,
  sweep,
  verify,
  oracle
};

std::string to_string(RunMode mode);

/// Parsed and validated run description. The config format is flat
/// `key = value` with dotted sections; inline tables `{ k = v, ... }` expand
/// to dotted keys and `[ ... ]` arrays nest. Unknown keys are rejected.
struct RunConfig {
  RunMode mode = RunMode::solve_min_j;
  bool mode_explicit = false;

  // young = { family = "power", p = 2.0 }
  // young = { family = "powersum", terms = [[1.0, 2.0], [1.0, 4.0]] }
  std::string young_family = "power";
  double young_p = 2.0;
  std::vector<PowerTerm> young_terms;

  // domain = { lo = -1.0, hi = 1.0, n_interior = 64, collar = 4.0 }
  double domain_lo = -1.0;
  double domain_hi = 1.0;
  int n_interior = 64;
  double collar = 4.0;

  double s = 0.5;

  BoundaryCondition bc = BoundaryCondition::dirichlet;
  std::optional<double> beta_constant;   // robin: constant weight...
  std::vector<double> beta_table;        // ...or one value per exterior node

  std::vector<double> alphas = {1.0};    // scalar alpha or sweep list
  SweepObjective objective = SweepObjective::minimize_J;

  std::string out_dir = "results";
  std::uint64_t seed = 42;

  // solver = { tol_residual = 1e-8, ... }
  double tol_residual = 1e-8;
  double tol_constraint = 1e-10;
  int max_iter = 5000;
  double step_init = 1.0;
  std::string initial_guess = "first-linear-mode";

  // minimax = { basis_pairs = 4, theta_samples = 256 }
  int minimax_basis_pairs = 4;
  int minimax_theta_samples = 256;

  // verify = { samples = 10000 }
  int verify_samples = 10000;

  YoungFunction make_young() const;
  Grid1D make_grid() const;
  BcSpec make_bc(const Grid1D& grid) const;
  SolverConfig make_solver(const Grid1D& grid) const;
};

/// Parses and validates the documented schema; throws ConfigError with line
/// and field context.
RunConfig parse_config(const std::string& text);

/// Canonical serialization; parse(emit_config(cfg)) reproduces cfg.
std::string emit_config(const RunConfig& cfg);

}  // namespace fgl
