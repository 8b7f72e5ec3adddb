#pragma once

#include <cstddef>
#include <vector>

#include "fgl/modular.hpp"

namespace fgl {

/// Dual vector of a functional at u in the quadrature-weighted Euclidean
/// pairing: entry i is ∂F/∂u_i. Gradients of the Dirichlet energy have zero
/// exterior entries (variations vanish outside Ω).
struct GradientVector {
  std::vector<double> values;

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

/// Boundary-value selector: which constraint governs the exterior and, for
/// Robin, the exterior weight.
struct BcSpec {
  BoundaryCondition kind = BoundaryCondition::dirichlet;
  std::optional<RobinWeight> beta;

  static BcSpec dirichlet() { return {BoundaryCondition::dirichlet, {}}; }
  static BcSpec neumann() { return {BoundaryCondition::neumann, {}}; }
  static BcSpec robin(RobinWeight beta) {
    return {BoundaryCondition::robin, std::move(beta)};
  }
};

/// ⟨op(u), v⟩ over all ordered node pairs:
/// Σ_{i≠j} g(|D_s u|)·sign(D_s u)·D_s v·w_ij, with g(0)·sign(0) := 0.
/// Both fields must be Dirichlet.
double pairing_full(const ModularWorkspace& ws, const Field& u,
                    const Field& v);

/// Same sum restricted to pairs not both exterior.
double pairing_star(const ModularWorkspace& ws, const Field& u,
                    const Field& v);

/// Nonlocal flux at an exterior node: the exterior row of the assembled
/// operator divided by the cell measure h, i.e.
/// 2·Σ_{j∈Ω} g(|D_s u(x, x_j)|)·sign(u(x) − u(x_j))·h/|x − x_j|^{1+s}.
/// The leading 2 matches the ordered-pair convention of the pairings, which
/// keeps the discrete integration-by-parts identity exact.
double normal_derivative(const ModularWorkspace& ws, const Field& u,
                         std::size_t exterior_node);

/// Gradient of the bulk modular: g(|u_i|)·sign(u_i)·h on interior nodes,
/// zero on the exterior.
GradientVector grad_bulk(const YoungFunction& F, const Grid1D& grid,
                         const Field& u);

/// Gradient of the Gagliardo-type modular (plus the Robin exterior term when
/// beta is given), assembled by scattering each pair's two contributions so
/// that ⟨grad, v⟩ reproduces the pairing by construction. beta must be
/// present exactly when u is a Robin field; Dirichlet gradients get their
/// exterior entries zeroed.
GradientVector grad_gagliardo(const ModularWorkspace& ws, const Field& u,
                              GagliardoKind kind,
                              const RobinWeight* beta = nullptr);

/// Gradient of the boundary-condition energy: full for Dirichlet, star for
/// Neumann, star plus the β term for Robin.
GradientVector grad_j(const ModularWorkspace& ws, const Field& u,
                      const BcSpec& bc);

/// The boundary-condition energy itself: J, J₀ or J_β.
double j_functional(const ModularWorkspace& ws, const Field& u,
                    const BcSpec& bc);

/// Ray profile of the boundary-condition energy (family Young functions).
std::optional<ScalingLaw> j_scaling(const ModularWorkspace& ws, const Field& u,
                                    const BcSpec& bc);

}  // namespace fgl
