#include "fgl/modular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fgl/reduce.hpp"

namespace fgl {

namespace {

double pow_fast(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  return std::pow(x, p);
}

void require_dirichlet(const Field& u, const char* what) {
  if (u.bc() != BoundaryCondition::dirichlet) {
    throw std::invalid_argument(std::string(what) +
                                ": requires a Dirichlet field");
  }
}

}  // namespace

RobinWeight RobinWeight::constant(const Grid1D& grid, double beta) {
  if (!(beta >= 0.0)) {
    throw std::invalid_argument("robin weight must be >= 0");
  }
  RobinWeight w;
  w.values_.assign(grid.exterior_count(), beta);
  return w;
}

RobinWeight RobinWeight::table(const Grid1D& grid,
                               std::span<const double> per_exterior_ordinal) {
  if (per_exterior_ordinal.size() != grid.exterior_count()) {
    throw std::invalid_argument(
        "robin weight table size must equal the exterior node count");
  }
  for (double b : per_exterior_ordinal) {
    if (!(b >= 0.0)) {
      throw std::invalid_argument("robin weight must be >= 0");
    }
  }
  RobinWeight w;
  w.values_.assign(per_exterior_ordinal.begin(), per_exterior_ordinal.end());
  return w;
}

ScalingLaw::ScalingLaw(std::vector<double> exponents,
                       std::vector<double> coeffs)
    : exponents_(std::move(exponents)), coeffs_(std::move(coeffs)) {
  if (exponents_.size() != coeffs_.size()) {
    throw std::invalid_argument("scaling law: size mismatch");
  }
}

double ScalingLaw::eval(double t) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    s += coeffs_[k] * pow_fast(t, exponents_[k]);
  }
  return s;
}

bool ScalingLaw::zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

double ScalingLaw::derivative(double t) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    s += coeffs_[k] * exponents_[k] * pow_fast(t, exponents_[k] - 1.0);
  }
  return s;
}

double ScalingLaw::solve(double target, double rel_tol) const {
  if (!(target > 0.0)) {
    throw std::invalid_argument("scaling law: target must be positive");
  }
  if (zero()) {
    throw std::invalid_argument("scaling law: zero profile has no root");
  }
  double hi = 1.0;
  int guard = 0;
  while (eval(hi) < target && guard++ < 1100) hi *= 2.0;
  double lo = 0.0;
  if (hi == 1.0) {
    lo = 1.0;
    while (eval(lo) > target && guard++ < 1100) lo *= 0.5;
    if (lo == 1.0) return 1.0;  // eval(1) == target exactly
    hi = 2.0 * lo;
  } else {
    lo = 0.5 * hi;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-9 * hi) break;
  }
  // Newton polish to the floating-point limit; the map is smooth, strictly
  // increasing and the bisection bracket is already tight.
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 12; ++it) {
    const double df = derivative(t);
    if (!(df > 0.0)) break;
    const double dt = (eval(t) - target) / df;
    t -= dt;
    if (std::abs(dt) <= std::max(rel_tol, 1e-16) * t) break;
  }
  return t;
}

ScalingLaw& ScalingLaw::operator+=(const ScalingLaw& other) {
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
    auto it = std::find(exponents_.begin(), exponents_.end(),
                        other.exponents_[k]);
    if (it != exponents_.end()) {
      coeffs_[std::size_t(it - exponents_.begin())] += other.coeffs_[k];
    } else {
      exponents_.push_back(other.exponents_[k]);
      coeffs_.push_back(other.coeffs_[k]);
    }
  }
  return *this;
}

ModularWorkspace::ModularWorkspace(YoungFunction F, const Grid1D& grid,
                                   double s)
    : young_(std::move(F)), grid_(&grid), kernel_(grid, s) {}

double ModularWorkspace::bulk(const Field& u) const {
  const double h = grid_->spacing();
  const std::size_t ib = grid_->interior_begin();
  const std::size_t ie = ib + grid_->interior_count();
  SumBuffer buf(grid_->interior_count());
  for (std::size_t i = ib; i < ie; ++i) {
    buf.push(young_.G(std::abs(u[i])) * h);
  }
  return buf.total();
}

double ModularWorkspace::gagliardo(const Field& u, GagliardoKind kind) const {
  if (kind == GagliardoKind::full) {
    require_dirichlet(u, "gagliardo(full)");
    // Exterior-exterior pairs vanish for Dirichlet extensions, so the star
    // pair table carries the whole sum.
  }
  SumBuffer buf(kernel_.pairs().size());
  for (const KernelPair& p : kernel_.pairs()) {
    const double q = std::abs((u[p.i] - u[p.j]) * p.inv_dist_s);
    buf.push(young_.G(q) * p.weight);
  }
  return 2.0 * buf.total();  // ordered pairs count both orientations
}

double ModularWorkspace::robin_exterior(const Field& u,
                                        const RobinWeight& beta) const {
  if (beta.size() != grid_->exterior_count()) {
    throw std::invalid_argument("robin weight does not match the grid");
  }
  const double h = grid_->spacing();
  SumBuffer buf(beta.size());
  for (std::size_t k = 0; k < beta.size(); ++k) {
    buf.push(beta[k] * young_.G(std::abs(u[grid_->exterior_node(k)])) * h);
  }
  return buf.total();
}

double ModularWorkspace::evaluate(const Field& u,
                                  const ModularKind& kind) const {
  switch (kind.tag) {
    case ModularKind::Tag::bulk:
      return bulk(u);
    case ModularKind::Tag::gagliardo_full:
      return gagliardo(u, GagliardoKind::full);
    case ModularKind::Tag::gagliardo_star:
      return gagliardo(u, GagliardoKind::star);
    case ModularKind::Tag::robin_exterior:
      if (kind.beta == nullptr) {
        throw std::invalid_argument("robin modular needs a weight");
      }
      return robin_exterior(u, *kind.beta);
  }
  throw std::logic_error("unreachable modular kind");
}

double ModularWorkspace::evaluate_scaled(const Field& u,
                                         const ModularKind& kind,
                                         double t) const {
  if (auto law = modular_scaling(*this, u, kind)) return law->eval(t);
  Field scaled = u;
  scaled.scale(t);
  return evaluate(scaled, kind);
}

double ModularWorkspace::luxemburg_norm(const Field& u,
                                        const ModularKind& kind) const {
  const double m0 = evaluate(u, kind);
  if (m0 == 0.0) return 0.0;
  if (auto law = modular_scaling(*this, u, kind)) {
    // modular(u/λ) = law(1/λ): solve for the unit level.
    return 1.0 / law->solve(1.0);
  }
  // Generic path: φ(λ) = modular(u/λ) is continuous and strictly decreasing.
  auto phi = [&](double lambda) { return evaluate_scaled(u, kind, 1.0 / lambda); };
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  if (phi(1.0) > 1.0) {
    while (phi(hi) > 1.0 && guard++ < 1100) hi *= 2.0;
    lo = 0.5 * hi;
  } else {
    while (phi(lo) < 1.0 && guard++ < 1100) lo *= 0.5;
    hi = lo == 1.0 ? 1.0 : 2.0 * lo;
    if (hi == lo) return 1.0;
  }
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-10 * hi) break;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> ModularWorkspace::holder_check(
    const Field& u, const Field& v) const {
  const double h = grid_->spacing();
  const std::size_t ib = grid_->interior_begin();
  const std::size_t ie = ib + grid_->interior_count();
  SumBuffer buf(grid_->interior_count());
  for (std::size_t i = ib; i < ie; ++i) {
    buf.push(std::abs(u[i] * v[i]) * h);
  }
  const double lhs = buf.total();

  const double norm_u = luxemburg_norm(u, ModularKind::bulk());

  // ‖v‖ against the complementary function: Φ_G̃(v/λ) = Σ G̃(|v_i|/λ)h.
  double norm_v = 0.0;
  std::vector<double> terms(grid_->interior_count());
  auto phi = [&](double lambda) {
    for (std::size_t i = ib; i < ie; ++i) {
      terms[i - ib] = young_.gtilde(std::abs(v[i]) / lambda) * h;
    }
    return pairwise_sum(terms);
  };
  bool all_zero = true;
  for (std::size_t i = ib; i < ie; ++i) {
    if (v[i] != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (!all_zero) {
    double lo = 1.0, hi = 1.0;
    int guard = 0;
    if (phi(1.0) > 1.0) {
      while (phi(hi) > 1.0 && guard++ < 1100) hi *= 2.0;
      lo = 0.5 * hi;
    } else {
      while (phi(lo) < 1.0 && guard++ < 1100) lo *= 0.5;
      hi = 2.0 * lo;
    }
    for (int it = 0; it < 120; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (phi(mid) > 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-10 * hi) break;
    }
    norm_v = 0.5 * (lo + hi);
  }
  return {lhs, norm_u * norm_v};
}

std::optional<ScalingLaw> modular_scaling(const ModularWorkspace& ws,
                                          const Field& u,
                                          const ModularKind& kind) {
  const auto* terms = ws.young().family_terms();
  if (terms == nullptr) return std::nullopt;
  const std::size_t nk = terms->size();
  std::vector<double> exps(nk), coeffs(nk);
  for (std::size_t k = 0; k < nk; ++k) exps[k] = (*terms)[k].exponent;

  const Grid1D& grid = ws.grid();
  const double h = grid.spacing();
  std::vector<SumBuffer> bufs(nk);

  switch (kind.tag) {
    case ModularKind::Tag::bulk: {
      const std::size_t ib = grid.interior_begin();
      const std::size_t ie = ib + grid.interior_count();
      for (std::size_t i = ib; i < ie; ++i) {
        const double a = std::abs(u[i]);
        for (std::size_t k = 0; k < nk; ++k) {
          bufs[k].push(pow_fast(a, exps[k]) * h);
        }
      }
      break;
    }
    case ModularKind::Tag::gagliardo_full:
      require_dirichlet(u, "gagliardo(full) scaling");
      [[fallthrough]];
    case ModularKind::Tag::gagliardo_star: {
      for (const KernelPair& p : ws.kernel().pairs()) {
        const double q = std::abs((u[p.i] - u[p.j]) * p.inv_dist_s);
        for (std::size_t k = 0; k < nk; ++k) {
          bufs[k].push(pow_fast(q, exps[k]) * (2.0 * p.weight));
        }
      }
      break;
    }
    case ModularKind::Tag::robin_exterior: {
      if (kind.beta == nullptr) {
        throw std::invalid_argument("robin modular needs a weight");
      }
      for (std::size_t k2 = 0; k2 < kind.beta->size(); ++k2) {
        const double a = std::abs(u[grid.exterior_node(k2)]);
        for (std::size_t k = 0; k < nk; ++k) {
          bufs[k].push((*kind.beta)[k2] * pow_fast(a, exps[k]) * h);
        }
      }
      break;
    }
  }
  for (std::size_t k = 0; k < nk; ++k) {
    coeffs[k] = (*terms)[k].coeff * bufs[k].total();
  }
  return ScalingLaw(std::move(exps), std::move(coeffs));
}

}  // namespace fgl
