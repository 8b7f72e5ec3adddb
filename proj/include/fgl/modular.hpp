#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fgl/grid.hpp"
#include "fgl/young.hpp"

namespace fgl {

/// Non-negative weight on the exterior collar, indexed by exterior ordinal.
class RobinWeight {
 public:
  static RobinWeight constant(const Grid1D& grid, double beta);
  static RobinWeight table(const Grid1D& grid,
                           std::span<const double> per_exterior_ordinal);

  double operator[](std::size_t ordinal) const { return values_[ordinal]; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  RobinWeight() = default;
  std::vector<double> values_;
};

enum class GagliardoKind { full, star };

/// Selector for the modular functionals: the bulk integral over Ω, the
/// Gagliardo-type double sums (full plane vs. pairs not both exterior), and
/// the β-weighted exterior integral.
struct ModularKind {
  enum class Tag { bulk, gagliardo_full, gagliardo_star, robin_exterior };
  Tag tag = Tag::bulk;
  const RobinWeight* beta = nullptr;

  static ModularKind bulk() { return {Tag::bulk, nullptr}; }
  static ModularKind gagliardo_full() { return {Tag::gagliardo_full, nullptr}; }
  static ModularKind gagliardo_star() { return {Tag::gagliardo_star, nullptr}; }
  static ModularKind robin(const RobinWeight& beta) {
    return {Tag::robin_exterior, &beta};
  }
};

/// Closed-form scaling profile of a modular along rays: for the built-in
/// Young families every modular obeys modular(t·u) = Σ cₖ·t^{pₖ} with the
/// cₖ computable in a single sweep, which turns constraint rescaling and
/// Luxemburg norms into scalar root finds.
class ScalingLaw {
 public:
  ScalingLaw(std::vector<double> exponents, std::vector<double> coeffs);

  double eval(double t) const;
  double derivative(double t) const;
  bool zero() const;

  /// Unique t > 0 with eval(t) = target (strictly increasing map), located
  /// by bisection and polished by Newton to the floating-point limit.
  double solve(double target, double rel_tol = 1e-14) const;

  ScalingLaw& operator+=(const ScalingLaw& other);

 private:
  std::vector<double> exponents_;
  std::vector<double> coeffs_;
};

/// Evaluator bundle for one (Young function, grid, s) triple; owns a copy
/// of the Young function and the cached kernel table the pair sums run
/// over. The grid is held by reference and must outlive the workspace. All
/// reductions are deterministic pairwise tree sums.
class ModularWorkspace {
 public:
  ModularWorkspace(YoungFunction F, const Grid1D& grid, double s);

  /// Σ_{i∈Ω} G(|u_i|)·h.
  double bulk(const Field& u) const;

  /// Ordered-pair sum Σ_{i≠j} G(|D_s u(i,j)|)·w_ij. The full kind insists on
  /// a Dirichlet field (zero exterior extension); star restricts to pairs
  /// not both exterior.
  double gagliardo(const Field& u, GagliardoKind kind) const;

  /// Σ_{i exterior} β_i·G(|u_i|)·h.
  double robin_exterior(const Field& u, const RobinWeight& beta) const;

  double evaluate(const Field& u, const ModularKind& kind) const;

  /// modular(t·u); closed form along rays for family Young functions.
  double evaluate_scaled(const Field& u, const ModularKind& kind,
                         double t) const;

  /// 0 for the zero field, else the unique λ > 0 with modular(u/λ) = 1,
  /// located by bracket doubling and bisection to 1e-10 relative.
  double luxemburg_norm(const Field& u, const ModularKind& kind) const;

  /// Returns (∫_Ω |u·v|, ‖u‖_G·‖v‖_G̃). The product bound holds with
  /// constant 1 in the continuum; discretely the factor-2 classical form is
  /// the hard guarantee, so callers decide which margin to enforce.
  std::pair<double, double> holder_check(const Field& u, const Field& v) const;

  const YoungFunction& young() const { return young_; }
  const Grid1D& grid() const { return *grid_; }
  const KernelTable& kernel() const { return kernel_; }
  double s() const { return kernel_.s(); }

 private:
  YoungFunction young_;
  const Grid1D* grid_;
  KernelTable kernel_;
};

/// Ray profile of a modular at u, when the Young function is a built-in
/// family; nullopt for custom functions (callers fall back to direct
/// re-evaluation).
std::optional<ScalingLaw> modular_scaling(const ModularWorkspace& ws,
                                          const Field& u,
                                          const ModularKind& kind);

}  // namespace fgl
