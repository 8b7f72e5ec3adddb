#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fgl/oracle.hpp"
#include "fgl/operator.hpp"

namespace fgl {

enum class InitialGuess { first_linear_mode, random_symmetric, supplied };
enum class ConstraintKind { prescribed_I, prescribed_J };

struct SolverConfig {
  double alpha = 1.0;
  BcSpec bc = BcSpec::dirichlet();
  double s = 0.5;
  double tol_residual = 1e-8;
  double tol_constraint = 1e-10;
  int max_iter = 5000;
  double step_init = 1.0;
  std::uint64_t seed = 42;
  InitialGuess initial_guess = InitialGuess::first_linear_mode;
  std::optional<std::vector<double>> supplied_guess;
  bool record_history = true;
};

struct IterationRecord {
  int iteration;
  double J;
  double I;
  double lambda;
  double residual;
};

/// A converged (or stalled: converged = false, never an abort) constrained
/// critical point. lambda is the multiplier ⟨J'(u), u⟩/⟨I'(u), u⟩ and
/// residual_norm the Euclidean norm of J'(u) − λ·I'(u) projected onto the
/// tangent of the active constraint.
struct EigenPair {
  double lambda = 0.0;
  Field u;
  ConstraintKind constraint = ConstraintKind::prescribed_I;
  double value_I = 0.0;
  double value_J = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool upper_bound = false;  // set by the k = 2 minimax relaxation
  std::vector<IterationRecord> history;
};

/// t·u with modular(t·u) = alpha to 1e-12 relative; the map t ↦ modular(t·u)
/// is strictly increasing, solved in closed form along rays for family Young
/// functions and by bisection otherwise. Throws for modular(u) = 0.
Field rescale_to_modular(const ModularWorkspace& ws, const Field& u,
                         const ModularKind& kind, double alpha,
                         double rel_tol = 1e-12);

/// Same, with the constraint picked by kind: the bulk modular for
/// prescribed_I, the boundary-condition energy for prescribed_J.
Field rescale_to_level(const ModularWorkspace& ws, const Field& u,
                       ConstraintKind kind, const BcSpec& bc, double alpha,
                       double rel_tol = 1e-12);

/// Projected gradient descent for min{J(u) : I(u) = α}: steps along −J'(u)
/// and restores the constraint by exact scalar rescaling, with backtracking
/// on J (ties resolved toward the smaller step).
EigenPair minimize_J_on_I(const ModularWorkspace& ws, const SolverConfig& cfg);

/// Projected gradient ascent for max{I(u) : J(u) = α}. This is the first
/// level of the genus-indexed sup-inf family: a compact symmetric set has
/// genus one exactly when it maps oddly and continuously into ℝ ∖ {0},
/// i.e. the antipodal pairs {±u}, so the level-1 value sup_K inf_K I over
/// genus-≥1 subsets of {J = α} is the constrained maximum of I (I is even).
/// Throws if the initial guess has J = 0 (constants under Neumann): the
/// constraint cannot be restored from such a start.
EigenPair maximize_I_on_J(const ModularWorkspace& ws, const SolverConfig& cfg);

/// Odd-loop upper bound for the second minimax level: sweeps
/// h(θ) = rescale(cos θ·φ₁ + sin θ·φ₂) over a half circle for candidate mode
/// pairs (first two linear modes plus seeded perturbations), takes max_θ J,
/// and minimizes over pairs by coordinate descent. The result is an upper
/// bound (upper_bound = true), never the level itself.
EigenPair minimax_k2(const ModularWorkspace& ws, const SolverConfig& cfg,
                     int basis_pairs, int theta_samples);

/// Rayleigh-type quotient ∬ g(|D_s u|)|D_s u| dμ / ∫ g(|u|)|u| with the pair
/// set (and β term) picked by the boundary condition. No eigenvalue lies
/// below its infimum.
double rayleigh_bar(const ModularWorkspace& ws, const Field& u,
                    const BcSpec& bc);

struct SweepRow {
  double alpha;
  double lambda;
  double value;  // J at the critical point (or I for the ascent objective)
  bool converged;
  int iterations;
  double residual;
};

enum class SweepObjective { minimize_J, maximize_I };

struct SweepResult {
  std::vector<SweepRow> rows;
  double inf_lambda = 0.0;
  Field last_u;
  std::vector<IterationRecord> last_history;
};

/// One solve per α with warm-started initial guesses; α must be finite,
/// positive and ascending. Non-convergence is recorded per row.
SweepResult sweep_alpha(const ModularWorkspace& ws, const SolverConfig& base,
                        std::span<const double> alphas,
                        SweepObjective objective = SweepObjective::minimize_J);

/// First Dirichlet eigenvalue of the pure-power problem t^p on the same
/// grid; the comparison quantity for the divergence bound. Requires p ≥ 2.
double oracle_p_lower(const Grid1D& grid, double s, double p, double alpha);

}  // namespace fgl
