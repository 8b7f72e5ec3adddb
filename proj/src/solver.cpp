#include "fgl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fgl/errors.hpp"
#include "fgl/reduce.hpp"

namespace fgl {

namespace {

void require_admissible(const ModularWorkspace& ws) {
  const StructureReport report = verify_structure(ws.young(), ws.s(), 1);
  if (!report.solver_admissible()) {
    throw StructureError(
        "Young function fails the growth/convexity requirements; run "
        "verify_structure for the detailed report");
  }
}

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("solver: alpha must be > 0");
  if (!(cfg.tol_residual > 0.0) || !(cfg.tol_constraint > 0.0)) {
    throw std::invalid_argument("solver: tolerances must be > 0");
  }
  if (cfg.max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
  if (!(cfg.step_init > 0.0)) throw std::invalid_argument("solver: step_init must be > 0");
  if (cfg.bc.kind == BoundaryCondition::robin && !cfg.bc.beta) {
    throw std::invalid_argument("solver: robin bc needs a weight");
  }
}

Field random_symmetric_field(const Grid1D& grid, BoundaryCondition bc,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t n = grid.node_count();
  std::vector<double> raw(n);
  for (double& v : raw) v = unit(rng);
  std::vector<double> sym(n);
  for (std::size_t i = 0; i < n; ++i) {
    sym[i] = 0.5 * (raw[i] + raw[n - 1 - i]);  // even about the domain center
  }
  return Field(grid, bc, sym);
}

Field initial_field(const ModularWorkspace& ws, const SolverConfig& cfg,
                    std::size_t mode_index = 0) {
  const Grid1D& grid = ws.grid();
  switch (cfg.initial_guess) {
    case InitialGuess::supplied:
      if (!cfg.supplied_guess) {
        throw std::invalid_argument("solver: supplied guess missing");
      }
      return Field(grid, cfg.bc.kind, *cfg.supplied_guess);
    case InitialGuess::first_linear_mode:
      if (grid.interior_count() <= 512) {
        const SpectrumP2 spectrum = oracle_spectrum_p2(grid, ws.s(), cfg.bc);
        return Field(grid, cfg.bc.kind, spectrum.eigenfields.at(mode_index));
      }
      [[fallthrough]];  // dense mode unavailable, fall back to the seeded start
    case InitialGuess::random_symmetric:
      return random_symmetric_field(grid, cfg.bc.kind, cfg.seed);
  }
  throw std::logic_error("unreachable initial guess kind");
}

double norm2(std::span<const double> v) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  return std::sqrt(pairwise_sum(sq));
}

// Residual J'(u) − λ·I'(u) projected onto the tangent of the constraint
// whose gradient is `constraint_grad`.
double tangent_residual(const GradientVector& gj, const GradientVector& gi,
                        double lambda, const GradientVector& constraint_grad) {
  const std::size_t n = gj.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = gj[i] - lambda * gi[i];
  const double cc = pairwise_dot(constraint_grad.values, constraint_grad.values);
  if (cc > 0.0) {
    const double rc = pairwise_dot(r, constraint_grad.values) / cc;
    for (std::size_t i = 0; i < n; ++i) r[i] -= rc * constraint_grad[i];
  }
  return norm2(r);
}

struct Multiplier {
  double lambda;
  double num;  // ⟨J'(u), u⟩
  double den;  // ⟨I'(u), u⟩
};

Multiplier multiplier_at(const Field& u, const GradientVector& gj,
                         const GradientVector& gi) {
  const double num = pairwise_dot(gj.values, u.values());
  const double den = pairwise_dot(gi.values, u.values());
  return {num / den, num, den};
}

}  // namespace

Field rescale_to_modular(const ModularWorkspace& ws, const Field& u,
                         const ModularKind& kind, double alpha,
                         double rel_tol) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("rescale: alpha must be > 0");
  }
  if (auto law = modular_scaling(ws, u, kind)) {
    if (law->zero()) {
      throw std::invalid_argument("rescale: modular(u) = 0");
    }
    Field out = u;
    out.scale(law->solve(alpha, 1e-14));
    return out;
  }
  const double m0 = ws.evaluate(u, kind);
  if (m0 == 0.0) throw std::invalid_argument("rescale: modular(u) = 0");
  // Bisection on the strictly increasing map t ↦ modular(t·u), to relative
  // tolerance rel_tol on the constraint value.
  double hi = 1.0;
  int guard = 0;
  while (ws.evaluate_scaled(u, kind, hi) < alpha && guard++ < 1100) hi *= 2.0;
  double lo = 0.0;
  if (hi == 1.0) {
    lo = 1.0;
    while (ws.evaluate_scaled(u, kind, lo) > alpha && guard++ < 1100) lo *= 0.5;
    hi = lo == 1.0 ? 1.0 : 2.0 * lo;
  } else {
    lo = 0.5 * hi;
  }
  // Bisect to the floating-point limit in t: the solvers compare candidate
  // energies at rescaled fields, and a looser root would feed its slack
  // into those comparisons. rel_tol is a ceiling, not a target.
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    const double m = ws.evaluate_scaled(u, kind, t);
    if (hi - lo <= 4e-16 * hi &&
        std::abs(m - alpha) <= rel_tol * alpha) {
      break;
    }
    if (m < alpha) {
      lo = t;
    } else {
      hi = t;
    }
  }
  Field out = u;
  out.scale(t);
  return out;
}

Field rescale_to_level(const ModularWorkspace& ws, const Field& u,
                       ConstraintKind kind, const BcSpec& bc, double alpha,
                       double rel_tol) {
  if (kind == ConstraintKind::prescribed_I) {
    return rescale_to_modular(ws, u, ModularKind::bulk(), alpha, rel_tol);
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("rescale: alpha must be > 0");
  }
  if (auto law = j_scaling(ws, u, bc)) {
    if (law->zero()) {
      throw std::invalid_argument("rescale: modular(u) = 0");
    }
    Field out = u;
    out.scale(law->solve(alpha, 1e-14));
    return out;
  }
  // Custom Young function: bisect on the directly evaluated energy.
  const double m0 = j_functional(ws, u, bc);
  if (m0 == 0.0) throw std::invalid_argument("rescale: modular(u) = 0");
  auto eval_scaled = [&](double t) {
    Field scaled = u;
    scaled.scale(t);
    return j_functional(ws, scaled, bc);
  };
  double hi = 1.0;
  int guard = 0;
  while (eval_scaled(hi) < alpha && guard++ < 1100) hi *= 2.0;
  double lo = 0.0;
  if (hi == 1.0) {
    lo = 1.0;
    while (eval_scaled(lo) > alpha && guard++ < 1100) lo *= 0.5;
    hi = lo == 1.0 ? 1.0 : 2.0 * lo;
  } else {
    lo = 0.5 * hi;
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    const double m = eval_scaled(t);
    if (hi - lo <= 4e-16 * hi && std::abs(m - alpha) <= rel_tol * alpha) break;
    if (m < alpha) {
      lo = t;
    } else {
      hi = t;
    }
  }
  Field out = u;
  out.scale(t);
  return out;
}

namespace {

// Shared projected-gradient driver. `descend_J` selects the objective:
// true  → minimize J under I(u) = α (step along −J', accept on J decrease)
// false → maximize I under J(u) = α (step along +I', accept on I increase)
EigenPair projected_gradient(const ModularWorkspace& ws,
                             const SolverConfig& cfg, Field u, bool descend_J) {
  const ConstraintKind constraint = descend_J ? ConstraintKind::prescribed_I
                                              : ConstraintKind::prescribed_J;
  u = rescale_to_level(ws, u, constraint, cfg.bc, cfg.alpha);

  EigenPair out{.lambda = 0.0,
                .u = u,
                .constraint = constraint,
                .value_I = 0.0,
                .value_J = 0.0,
                .residual_norm = 0.0,
                .iterations = 0,
                .converged = false,
                .upper_bound = false,
                .history = {}};

  double objective = descend_J ? j_functional(ws, u, cfg.bc) : ws.bulk(u);
  // Best objective seen; anchors the rounding guard of the flat-step branch
  // so the sequence cannot drift over many iterations.
  double best_objective = objective;

  for (int it = 0; it < cfg.max_iter; ++it) {
    const GradientVector gj = grad_j(ws, u, cfg.bc);
    const GradientVector gi = grad_bulk(ws.young(), ws.grid(), u);
    const Multiplier mult = multiplier_at(u, gj, gi);
    const GradientVector& tangent_of = descend_J ? gi : gj;
    const double residual = tangent_residual(gj, gi, mult.lambda, tangent_of);

    if (cfg.record_history) {
      const double J_now = descend_J ? objective : cfg.alpha;
      const double I_now = descend_J ? cfg.alpha : objective;
      out.history.push_back({it, J_now, I_now, mult.lambda, residual});
    }
    out.lambda = mult.lambda;
    out.residual_norm = residual;
    out.iterations = it;
    if (residual <= cfg.tol_residual * (1.0 + std::abs(mult.lambda))) {
      out.converged = true;
      break;
    }

    // Move along the objective gradient projected onto the constraint
    // tangent; the component along the constraint normal would be cancelled
    // by the rescaling anyway and only feeds rounding noise into the step.
    const GradientVector& objective_grad = descend_J ? gj : gi;
    std::vector<double> direction(u.size());
    {
      const double cc =
          pairwise_dot(tangent_of.values, tangent_of.values);
      const double oc =
          cc > 0.0
              ? pairwise_dot(objective_grad.values, tangent_of.values) / cc
              : 0.0;
      for (std::size_t i = 0; i < direction.size(); ++i) {
        direction[i] = objective_grad[i] - oc * tangent_of[i];
      }
    }

    // Backtracking by halving from step_init. Accept the largest trial with
    // a strict improvement. Near the floating-point floor improvements fall
    // below one ulp of the objective; there the largest trial inside the
    // rounding guard band is taken (the direction descends in exact
    // arithmetic), so the iterate keeps moving while the recorded objective
    // stays within rounding of monotone.
    const double sign = descend_J ? -1.0 : 1.0;
    const double guard = 1e-12 * std::abs(best_objective);
    bool accepted = false;
    std::optional<Field> banded_field;
    double banded_value = 0.0;
    double trial = cfg.step_init;
    for (int bt = 0; bt < 40 && !accepted; ++bt, trial *= 0.5) {
      std::vector<double> cand(u.size());
      for (std::size_t i = 0; i < cand.size(); ++i) {
        cand[i] = u[i] + sign * trial * direction[i];
      }
      Field candidate(ws.grid(), cfg.bc.kind, cand);
      Field rescaled(candidate);
      try {
        rescaled = rescale_to_level(ws, candidate, constraint, cfg.bc, cfg.alpha);
      } catch (const std::invalid_argument&) {
        continue;  // stepped onto the zero field, shorten
      }
      const double value =
          descend_J ? j_functional(ws, rescaled, cfg.bc) : ws.bulk(rescaled);
      const bool better = descend_J ? value < objective : value > objective;
      if (better) {
        u = rescaled;
        objective = value;
        accepted = true;
        break;
      }
      const bool in_band = descend_J ? value <= best_objective + guard
                                     : value >= best_objective - guard;
      if (!banded_field && in_band) {
        banded_field = rescaled;
        banded_value = value;
      }
    }
    if (!accepted) {
      if (!banded_field) break;  // genuinely stuck, flagged not converged
      u = *banded_field;
      objective = banded_value;
    }
    best_objective = descend_J ? std::min(best_objective, objective)
                               : std::max(best_objective, objective);
  }

  out.u = u;
  out.value_I = ws.bulk(u);
  out.value_J = j_functional(ws, u, cfg.bc);
  return out;
}

}  // namespace

EigenPair minimize_J_on_I(const ModularWorkspace& ws, const SolverConfig& cfg) {
  validate_config(cfg);
  require_admissible(ws);
  Field u0 = initial_field(ws, cfg);
  return projected_gradient(ws, cfg, std::move(u0), /*descend_J=*/true);
}

EigenPair maximize_I_on_J(const ModularWorkspace& ws, const SolverConfig& cfg) {
  validate_config(cfg);
  require_admissible(ws);
  Field u0 = initial_field(ws, cfg);
  // Constants (and numerically-constant modes) carry no energy: the
  // constraint J = alpha cannot be restored from them. J is compared
  // against the bulk level of the same field, which is scale-free enough to
  // separate rounding debris from genuine energy.
  const double j0 = j_functional(ws, u0, cfg.bc);
  const double i0 = ws.bulk(u0);
  if (j0 == 0.0 || (i0 > 0.0 && j0 <= 1e-12 * i0)) {
    throw std::invalid_argument(
        "maximize_I_on_J: initial guess has (numerically) zero energy J; "
        "supply a non-constant guess");
  }
  if (i0 == 0.0) {
    // A guess supported on the exterior collar is a critical point of the
    // ascent objective (its gradient vanishes on the exterior) and the
    // multiplier is undefined there.
    throw std::invalid_argument(
        "maximize_I_on_J: initial guess vanishes on the domain");
  }
  return projected_gradient(ws, cfg, std::move(u0), /*descend_J=*/false);
}

EigenPair minimax_k2(const ModularWorkspace& ws, const SolverConfig& cfg,
                     int basis_pairs, int theta_samples) {
  validate_config(cfg);
  require_admissible(ws);
  if (basis_pairs < 1) {
    throw std::invalid_argument("minimax_k2: basis_pairs must be >= 1");
  }
  if (theta_samples < 16) {
    throw std::invalid_argument("minimax_k2: theta_samples must be >= 16");
  }
  const Grid1D& grid = ws.grid();
  const SpectrumP2 spectrum = oracle_spectrum_p2(grid, ws.s(), cfg.bc);
  if (spectrum.eigenfields.size() < 2) {
    throw std::invalid_argument("minimax_k2: needs at least two linear modes");
  }

  const double pi = 3.14159265358979323846;

  auto check_independent = [&](const Field& a, const Field& b) {
    const double aa = pairwise_dot(a.values(), a.values());
    const double bb = pairwise_dot(b.values(), b.values());
    const double ab = pairwise_dot(a.values(), b.values());
    if (!(aa > 0.0) || !(bb > 0.0) || ab * ab >= aa * bb * (1.0 - 1e-12)) {
      throw std::invalid_argument("minimax_k2: basis pair is degenerate");
    }
  };

  struct LoopPoint {
    double max_J = -1.0;
    Field u;
  };

  // Sweep the odd loop h(θ) = rescale(cos θ·φ₁ + sin θ·φ₂) over [0, π);
  // oddness of the rescaling supplies the other half circle.
  auto eval_pair = [&](const Field& phi1, const Field& phi2) {
    check_independent(phi1, phi2);
    LoopPoint best{-1.0, Field(grid, cfg.bc.kind)};
    for (int k = 0; k < theta_samples; ++k) {
      const double theta = pi * double(k) / double(theta_samples);
      const double c = std::cos(theta);
      const double sn = std::sin(theta);
      std::vector<double> combo(grid.node_count());
      for (std::size_t i = 0; i < combo.size(); ++i) {
        combo[i] = c * phi1[i] + sn * phi2[i];
      }
      Field w(grid, cfg.bc.kind, combo);
      Field u = rescale_to_level(ws, w, ConstraintKind::prescribed_I, cfg.bc,
                                 cfg.alpha);
      const double J = j_functional(ws, u, cfg.bc);
      if (J > best.max_J) {
        best.max_J = J;
        best.u = u;
      }
    }
    return best;
  };

  // Candidate members: the two linear modes plus seeded perturbations.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto perturbed = [&](const std::vector<double>& base) {
    std::vector<double> v = base;
    double scale = 0.0;
    for (double x : base) scale = std::max(scale, std::abs(x));
    for (double& x : v) x += 0.1 * scale * unit(rng);
    return Field(grid, cfg.bc.kind, v);
  };

  std::vector<std::pair<Field, Field>> pairs;
  pairs.emplace_back(Field(grid, cfg.bc.kind, spectrum.eigenfields[0]),
                     Field(grid, cfg.bc.kind, spectrum.eigenfields[1]));
  for (int k = 1; k < basis_pairs; ++k) {
    pairs.emplace_back(perturbed(spectrum.eigenfields[0]),
                       perturbed(spectrum.eigenfields[1]));
  }

  std::vector<LoopPoint> evaluated;
  evaluated.reserve(pairs.size());
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    evaluated.push_back(eval_pair(pairs[k].first, pairs[k].second));
    if (evaluated[k].max_J < evaluated[best_index].max_J) best_index = k;
  }

  std::pair<Field, Field> best_pair = pairs[best_index];
  LoopPoint best = evaluated[best_index];

  // Coordinate descent over the pair members, drawing replacements from the
  // full candidate pool.
  for (int round = 0; round < 2; ++round) {
    for (int coord = 0; coord < 2; ++coord) {
      for (const auto& candidate_pair : pairs) {
        for (const Field* replacement :
             {&candidate_pair.first, &candidate_pair.second}) {
          std::pair<Field, Field> trial = best_pair;
          (coord == 0 ? trial.first : trial.second) = *replacement;
          LoopPoint value{-1.0, Field(grid, cfg.bc.kind)};
          try {
            value = eval_pair(trial.first, trial.second);
          } catch (const std::invalid_argument&) {
            continue;  // degenerate trial pair, skip
          }
          if (value.max_J < best.max_J) {
            best = value;
            best_pair = trial;
          }
        }
      }
    }
  }

  const GradientVector gj = grad_j(ws, best.u, cfg.bc);
  const GradientVector gi = grad_bulk(ws.young(), ws.grid(), best.u);
  const Multiplier mult = multiplier_at(best.u, gj, gi);

  EigenPair out{.lambda = mult.lambda,
                .u = best.u,
                .constraint = ConstraintKind::prescribed_I,
                .value_I = ws.bulk(best.u),
                .value_J = best.max_J,
                .residual_norm = tangent_residual(gj, gi, mult.lambda, gi),
                .iterations = theta_samples,
                .converged = true,
                .upper_bound = true,
                .history = {}};
  return out;
}

double rayleigh_bar(const ModularWorkspace& ws, const Field& u,
                    const BcSpec& bc) {
  const Grid1D& grid = ws.grid();
  const YoungFunction& F = ws.young();
  const double h = grid.spacing();
  const std::size_t ib = grid.interior_begin();
  const std::size_t ie = ib + grid.interior_count();

  SumBuffer den_buf(grid.interior_count());
  for (std::size_t i = ib; i < ie; ++i) {
    const double a = std::abs(u[i]);
    den_buf.push(F.g(a) * a * h);
  }
  const double den = den_buf.total();
  if (den == 0.0) {
    throw std::invalid_argument("rayleigh_bar: u vanishes on the domain");
  }

  SumBuffer num_buf(ws.kernel().pairs().size());
  for (const KernelPair& p : ws.kernel().pairs()) {
    const double q = std::abs((u[p.i] - u[p.j]) * p.inv_dist_s);
    num_buf.push(F.g(q) * q * p.weight);
  }
  double num = 2.0 * num_buf.total();
  if (bc.kind == BoundaryCondition::robin) {
    if (!bc.beta) throw std::invalid_argument("rayleigh_bar: robin needs a weight");
    SumBuffer robin_buf(bc.beta->size());
    for (std::size_t k = 0; k < bc.beta->size(); ++k) {
      const double a = std::abs(u[grid.exterior_node(k)]);
      robin_buf.push((*bc.beta)[k] * F.g(a) * a * h);
    }
    num += robin_buf.total();
  }
  return num / den;
}

SweepResult sweep_alpha(const ModularWorkspace& ws, const SolverConfig& base,
                        std::span<const double> alphas,
                        SweepObjective objective) {
  if (alphas.empty()) throw std::invalid_argument("sweep: empty alpha list");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0) || !std::isfinite(alphas[k])) {
      throw std::invalid_argument("sweep: alphas must be finite and positive");
    }
    if (k > 0 && !(alphas[k] > alphas[k - 1])) {
      throw std::invalid_argument("sweep: alphas must be ascending");
    }
  }

  SweepResult out{.rows = {},
                  .inf_lambda = std::numeric_limits<double>::infinity(),
                  .last_u = Field(ws.grid(), base.bc.kind),
                  .last_history = {}};
  SolverConfig cfg = base;
  for (double alpha : alphas) {
    cfg.alpha = alpha;
    EigenPair ep = objective == SweepObjective::minimize_J
                       ? minimize_J_on_I(ws, cfg)
                       : maximize_I_on_J(ws, cfg);
    out.rows.push_back({alpha, ep.lambda,
                        objective == SweepObjective::minimize_J ? ep.value_J
                                                                : ep.value_I,
                        ep.converged, ep.iterations, ep.residual_norm});
    out.inf_lambda = std::min(out.inf_lambda, ep.lambda);
    // Warm start the next level from this critical point.
    cfg.initial_guess = InitialGuess::supplied;
    cfg.supplied_guess.emplace(ep.u.values().begin(), ep.u.values().end());
    out.last_u = ep.u;
    out.last_history = std::move(ep.history);
  }
  return out;
}

double oracle_p_lower(const Grid1D& grid, double s, double p, double alpha) {
  if (!(p >= 2.0)) {
    throw std::invalid_argument("oracle_p_lower: requires p >= 2");
  }
  const YoungFunction F = YoungFunction::power(p);
  const ModularWorkspace ws(F, grid, s);
  SolverConfig cfg;
  cfg.alpha = alpha;
  cfg.s = s;
  cfg.bc = BcSpec::dirichlet();
  cfg.record_history = false;
  const EigenPair ep = minimize_J_on_I(ws, cfg);
  return ep.lambda;
}

}  // namespace fgl
