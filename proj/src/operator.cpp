#include "fgl/operator.hpp"

#include <cmath>
#include <stdexcept>

#include "fgl/reduce.hpp"

namespace fgl {

namespace {

// g(|t|)·sign(t), continuous through 0 because g(0) = 0.
double signed_g(const YoungFunction& F, double t) {
  if (t > 0.0) return F.g(t);
  if (t < 0.0) return -F.g(-t);
  return 0.0;
}

double pairing_over_table(const ModularWorkspace& ws, const Field& u,
                          const Field& v) {
  const YoungFunction& F = ws.young();
  SumBuffer buf(ws.kernel().pairs().size());
  for (const KernelPair& p : ws.kernel().pairs()) {
    const double du = (u[p.i] - u[p.j]) * p.inv_dist_s;
    const double dv = (v[p.i] - v[p.j]) * p.inv_dist_s;
    buf.push(signed_g(F, du) * dv * p.weight);
  }
  return 2.0 * buf.total();
}

}  // namespace

double pairing_full(const ModularWorkspace& ws, const Field& u,
                    const Field& v) {
  if (u.bc() != BoundaryCondition::dirichlet ||
      v.bc() != BoundaryCondition::dirichlet) {
    throw std::invalid_argument("pairing_full: requires Dirichlet fields");
  }
  // Exterior-exterior pairs carry zero quotients for Dirichlet extensions.
  return pairing_over_table(ws, u, v);
}

double pairing_star(const ModularWorkspace& ws, const Field& u,
                    const Field& v) {
  return pairing_over_table(ws, u, v);
}

double normal_derivative(const ModularWorkspace& ws, const Field& u,
                         std::size_t exterior_node) {
  const Grid1D& grid = ws.grid();
  if (exterior_node >= grid.node_count() || grid.is_interior(exterior_node)) {
    throw std::invalid_argument("normal_derivative: node must be exterior");
  }
  const YoungFunction& F = ws.young();
  const double s = ws.s();
  const double h = grid.spacing();
  const double x = grid.node(exterior_node);
  const std::size_t ib = grid.interior_begin();
  const std::size_t ie = ib + grid.interior_count();
  SumBuffer buf(grid.interior_count());
  for (std::size_t j = ib; j < ie; ++j) {
    const double d = std::abs(x - grid.node(j));
    const double du = (u[exterior_node] - u[j]) * std::pow(d, -s);
    buf.push(signed_g(F, du) * h * std::pow(d, -(1.0 + s)));
  }
  return 2.0 * buf.total();
}

GradientVector grad_bulk(const YoungFunction& F, const Grid1D& grid,
                         const Field& u) {
  GradientVector grad;
  grad.values.assign(grid.node_count(), 0.0);
  const double h = grid.spacing();
  const std::size_t ib = grid.interior_begin();
  const std::size_t ie = ib + grid.interior_count();
  for (std::size_t i = ib; i < ie; ++i) {
    grad.values[i] = signed_g(F, u[i]) * h;
  }
  return grad;
}

GradientVector grad_gagliardo(const ModularWorkspace& ws, const Field& u,
                              GagliardoKind kind, const RobinWeight* beta) {
  if (kind == GagliardoKind::full && u.bc() != BoundaryCondition::dirichlet) {
    throw std::invalid_argument("grad_gagliardo(full): requires a Dirichlet field");
  }
  const bool is_robin = u.bc() == BoundaryCondition::robin;
  if ((beta != nullptr) != is_robin) {
    throw std::invalid_argument(
        "grad_gagliardo: beta must be supplied exactly for Robin fields");
  }
  const YoungFunction& F = ws.young();
  const Grid1D& grid = ws.grid();
  GradientVector grad;
  grad.values.assign(grid.node_count(), 0.0);
  for (const KernelPair& p : ws.kernel().pairs()) {
    const double du = (u[p.i] - u[p.j]) * p.inv_dist_s;
    const double c = 2.0 * signed_g(F, du) * p.weight * p.inv_dist_s;
    grad.values[p.i] += c;
    grad.values[p.j] -= c;
  }
  if (u.bc() == BoundaryCondition::dirichlet) {
    for (std::size_t i = 0; i < grad.values.size(); ++i) {
      if (!grid.is_interior(i)) grad.values[i] = 0.0;
    }
  }
  if (is_robin) {
    const double h = grid.spacing();
    for (std::size_t k = 0; k < beta->size(); ++k) {
      const std::size_t e = grid.exterior_node(k);
      grad.values[e] += (*beta)[k] * signed_g(F, u[e]) * h;
    }
  }
  return grad;
}

GradientVector grad_j(const ModularWorkspace& ws, const Field& u,
                      const BcSpec& bc) {
  switch (bc.kind) {
    case BoundaryCondition::dirichlet:
      return grad_gagliardo(ws, u, GagliardoKind::full);
    case BoundaryCondition::neumann:
      return grad_gagliardo(ws, u, GagliardoKind::star);
    case BoundaryCondition::robin:
      if (!bc.beta) throw std::invalid_argument("robin bc needs a weight");
      return grad_gagliardo(ws, u, GagliardoKind::star, &*bc.beta);
  }
  throw std::logic_error("unreachable bc kind");
}

double j_functional(const ModularWorkspace& ws, const Field& u,
                    const BcSpec& bc) {
  switch (bc.kind) {
    case BoundaryCondition::dirichlet:
      return ws.gagliardo(u, GagliardoKind::full);
    case BoundaryCondition::neumann:
      return ws.gagliardo(u, GagliardoKind::star);
    case BoundaryCondition::robin:
      if (!bc.beta) throw std::invalid_argument("robin bc needs a weight");
      return ws.gagliardo(u, GagliardoKind::star) +
             ws.robin_exterior(u, *bc.beta);
  }
  throw std::logic_error("unreachable bc kind");
}

std::optional<ScalingLaw> j_scaling(const ModularWorkspace& ws, const Field& u,
                                    const BcSpec& bc) {
  const ModularKind gag = bc.kind == BoundaryCondition::dirichlet
                              ? ModularKind::gagliardo_full()
                              : ModularKind::gagliardo_star();
  auto law = modular_scaling(ws, u, gag);
  if (!law) return std::nullopt;
  if (bc.kind == BoundaryCondition::robin) {
    if (!bc.beta) throw std::invalid_argument("robin bc needs a weight");
    auto tail = modular_scaling(ws, u, ModularKind::robin(*bc.beta));
    if (!tail) return std::nullopt;
    *law += *tail;
  }
  return law;
}

}  // namespace fgl
