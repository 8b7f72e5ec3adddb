#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fgl/operator.hpp"
#include "fgl/reduce.hpp"

using namespace fgl;

namespace {

Field random_field(const Grid1D& g, BoundaryCondition bc, std::mt19937_64& rng,
                   double amp = 1.0) {
  std::uniform_real_distribution<double> unit(-amp, amp);
  std::vector<double> v(g.node_count());
  for (double& x : v) x = unit(rng);
  return Field(g, bc, v);
}

double signed_g(const YoungFunction& F, double t) {
  if (t > 0.0) return F.g(t);
  if (t < 0.0) return -F.g(-t);
  return 0.0;
}

// Test-local re-summation over ordered pairs with plain accumulation;
// independent of the production pair table and reduction order.
double naive_pairing_star(const YoungFunction& F, const Grid1D& g,
                          const Field& u, const Field& v, double s) {
  double total = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    for (std::size_t j = 0; j < g.node_count(); ++j) {
      if (i == j) continue;
      if (!g.is_interior(i) && !g.is_interior(j)) continue;
      const double du = holder_quotient(g, u, i, j, s);
      const double dv = holder_quotient(g, v, i, j, s);
      total += signed_g(F, du) * dv * pair_weight(g, i, j);
    }
  }
  return total;
}

// Central finite difference of the boundary-condition energy along one
// coordinate, evaluated through the terms that actually change so the
// difference carries no O(J)·ulp noise.
double fd_grad_j(const ModularWorkspace& ws, const Field& u, const BcSpec& bc,
                 std::size_t coord, double eps) {
  const Grid1D& g = ws.grid();
  const YoungFunction& F = ws.young();
  const double s = ws.s();
  std::vector<double> up(u.values().begin(), u.values().end());
  std::vector<double> dn(up);
  up[coord] += eps;
  dn[coord] -= eps;
  const Field u_up(g, u.bc(), up);
  const Field u_dn(g, u.bc(), dn);

  double delta = 0.0;
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    if (j == coord) continue;
    const bool admissible = g.is_interior(coord) || g.is_interior(j);
    if (!admissible) continue;
    const double w = pair_weight(g, coord, j);
    const double q_up = std::abs(holder_quotient(g, u_up, coord, j, s));
    const double q_dn = std::abs(holder_quotient(g, u_dn, coord, j, s));
    delta += 2.0 * (F.G(q_up) - F.G(q_dn)) * w;  // ordered pairs: both orders
  }
  if (bc.kind == BoundaryCondition::robin && !g.is_interior(coord)) {
    const double b = (*bc.beta)[g.exterior_ordinal(coord)];
    delta += b * (F.G(std::abs(u_up[coord])) - F.G(std::abs(u_dn[coord]))) *
             g.spacing();
  }
  return delta / (2.0 * eps);
}

}  // namespace

TEST_CASE("pairing against the field itself") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 12, 1.5);
  std::mt19937_64 rng(3);

  // Quadratic case: g(t)·t = 2·G(t) pointwise.
  const YoungFunction F2 = YoungFunction::power(2.0);
  const ModularWorkspace ws2(F2, g, 0.5);
  const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
  CHECK(pairing_full(ws2, u, u) ==
        doctest::Approx(2.0 * ws2.gagliardo(u, GagliardoKind::full))
            .epsilon(1e-12));

  // Growth sandwich p⁻·J ≤ ⟨J'(u), u⟩ ≤ p⁺·J.
  const YoungFunction F24 = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws24(F24, g, 0.5);
  for (int k = 0; k < 20; ++k) {
    const Field w = random_field(g, BoundaryCondition::dirichlet, rng, 2.0);
    const double J = ws24.gagliardo(w, GagliardoKind::full);
    const double pw = pairing_full(ws24, w, w);
    CHECK(2.0 * J <= pw * (1.0 + 1e-12));
    CHECK(pw <= 4.0 * J * (1.0 + 1e-12));
  }

  const Field zero(g, BoundaryCondition::dirichlet);
  CHECK(pairing_full(ws2, zero, u) == 0.0);
}

TEST_CASE("star pairing") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 10, 1.5);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F, g, 0.4);
  std::mt19937_64 rng(7);

  const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
  const Field v = random_field(g, BoundaryCondition::dirichlet, rng);
  CHECK(pairing_star(ws, u, v) == pairing_full(ws, u, v));

  const Field c(g, BoundaryCondition::neumann,
                std::vector<double>(g.node_count(), 1.9));
  const Field w = random_field(g, BoundaryCondition::neumann, rng);
  CHECK(pairing_star(ws, c, w) == 0.0);

  // Direct re-summation oracle.
  for (int k = 0; k < 5; ++k) {
    const Field a = random_field(g, BoundaryCondition::neumann, rng);
    const Field b = random_field(g, BoundaryCondition::neumann, rng);
    const double naive = naive_pairing_star(F, g, a, b, 0.4);
    CHECK(pairing_star(ws, a, b) ==
          doctest::Approx(naive).epsilon(1e-11));
  }

  const Field nf = random_field(g, BoundaryCondition::neumann, rng);
  CHECK_THROWS_AS((void)pairing_full(ws, nf, nf), std::invalid_argument);
}

TEST_CASE("normal derivative") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 12, 1.5);
  const YoungFunction F2 = YoungFunction::power(2.0);
  const ModularWorkspace ws(F2, g, 0.5);
  std::mt19937_64 rng(11);

  const Field c(g, BoundaryCondition::neumann,
                std::vector<double>(g.node_count(), 4.2));
  CHECK(normal_derivative(ws, c, 0) == 0.0);

  // Quadratic case is linear in the field.
  const Field u = random_field(g, BoundaryCondition::neumann, rng);
  Field u3 = u;
  u3.scale(3.0);
  CHECK(normal_derivative(ws, u3, 1) ==
        doctest::Approx(3.0 * normal_derivative(ws, u, 1)).epsilon(1e-12));

  // Direct summation cross-check at one node (the ordered-pair convention
  // doubles the one-sided flux sum).
  const std::size_t node = g.node_count() - 2;
  double direct = 0.0;
  for (std::size_t j = g.interior_begin();
       j < g.interior_begin() + g.interior_count(); ++j) {
    const double d = std::abs(g.node(node) - g.node(j));
    const double du = (u[node] - u[j]) / std::pow(d, 0.5);
    direct += 2.0 * signed_g(F2, du) * g.spacing() / std::pow(d, 1.5);
  }
  CHECK(normal_derivative(ws, u, node) == doctest::Approx(direct).epsilon(1e-12));

  // Indicator of the domain: outward flux is negative at every exterior
  // node, and for G = t² it sums to -2·2·Σ h/d^{1+2s} (one factor 2 from
  // g(t) = 2t, one from the ordered-pair convention).
  std::vector<double> ind(g.node_count(), 0.0);
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    if (g.is_interior(j)) ind[j] = 1.0;
  }
  const Field chi(g, BoundaryCondition::neumann, ind);
  for (std::size_t e = 0; e < g.exterior_count(); ++e) {
    const std::size_t x = g.exterior_node(e);
    double expected = 0.0;
    for (std::size_t j = g.interior_begin();
         j < g.interior_begin() + g.interior_count(); ++j) {
      const double d = std::abs(g.node(x) - g.node(j));
      expected += -4.0 * g.spacing() / std::pow(d, 2.0);  // 1 + 2s = 2
    }
    const double flux = normal_derivative(ws, chi, x);
    CHECK(flux < 0.0);
    CHECK(flux == doctest::Approx(expected).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)normal_derivative(ws, u, g.interior_begin()),
                  std::invalid_argument);
}

TEST_CASE("bulk gradient") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 12, 1.0);
  const YoungFunction F2 = YoungFunction::power(2.0);
  const YoungFunction F24 = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws24(F24, g, 0.5);
  std::mt19937_64 rng(13);

  CHECK(grad_bulk(F2, g, Field(g, BoundaryCondition::neumann)).values ==
        std::vector<double>(g.node_count(), 0.0));

  const Field u = random_field(g, BoundaryCondition::neumann, rng);
  const GradientVector grad2 = grad_bulk(F2, g, u);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.is_interior(i)) {
      CHECK(grad2[i] == doctest::Approx(2.0 * g.spacing() * u[i]));
    } else {
      CHECK(grad2[i] == 0.0);
    }
  }

  // Central finite differences of the bulk modular.
  const GradientVector grad24 = grad_bulk(F24, g, u);
  const double eps = 1e-6;
  for (int k = 0; k < 30; ++k) {
    const std::size_t i =
        g.interior_begin() + rng() % g.interior_count();
    const double fd = (F24.G(std::abs(u[i] + eps)) -
                       F24.G(std::abs(u[i] - eps))) *
                      g.spacing() / (2.0 * eps);
    CHECK(grad24[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("Gagliardo gradient") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 10, 1.5);
  const YoungFunction F24 = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F24, g, 0.5);
  std::mt19937_64 rng(17);
  const RobinWeight beta = RobinWeight::constant(g, 0.8);
  const RobinWeight beta0 = RobinWeight::constant(g, 0.0);

  SUBCASE("finite differences across the boundary conditions") {
    const double eps = 1e-6;
    const std::vector<BcSpec> bcs = {BcSpec::dirichlet(), BcSpec::neumann(),
                                     BcSpec::robin(beta)};
    for (const BcSpec& bc : bcs) {
      const Field u = random_field(g, bc.kind, rng);
      const GradientVector grad = grad_j(ws, u, bc);
      for (int k = 0; k < 25; ++k) {
        std::size_t coord = rng() % g.node_count();
        if (bc.kind == BoundaryCondition::dirichlet) {
          coord = g.interior_begin() + rng() % g.interior_count();
        }
        const double fd = fd_grad_j(ws, u, bc, coord, eps);
        CHECK(grad[coord] ==
              doctest::Approx(fd).epsilon(1e-6).scale(1e-12));
      }
    }
  }

  SUBCASE("zero Robin weight reproduces the Neumann gradient") {
    const Field u = random_field(g, BoundaryCondition::robin, rng);
    const GradientVector gr = grad_gagliardo(ws, u, GagliardoKind::star, &beta0);
    const GradientVector gn = grad_gagliardo(
        ws, u.retagged(BoundaryCondition::neumann), GagliardoKind::star);
    CHECK(gr.values == gn.values);
  }

  SUBCASE("quadratic case equals the assembled kernel matrix") {
    const YoungFunction F2 = YoungFunction::power(2.0);
    const ModularWorkspace ws2(F2, g, 0.5);
    const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
    const std::size_t n = g.node_count();
    std::vector<double> A(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!g.is_interior(i) && !g.is_interior(j)) continue;
        const double d = std::abs(g.node(i) - g.node(j));
        const double kappa = 2.0 * pair_weight(g, i, j) / d;  // 2·w·d^{-2s}, s = 1/2
        A[i * n + i] += kappa;
        A[j * n + j] += kappa;
        A[i * n + j] -= kappa;
        A[j * n + i] -= kappa;
      }
    }
    const GradientVector grad = grad_gagliardo(ws2, u, GagliardoKind::full);
    for (std::size_t i = 0; i < n; ++i) {
      if (!g.is_interior(i)) {
        CHECK(grad[i] == 0.0);
        continue;
      }
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += A[i * n + j] * u[j];
      CHECK(grad[i] == doctest::Approx(2.0 * row).epsilon(1e-11));
    }
  }

  SUBCASE("gradients of even functionals are odd") {
    const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
    Field neg = u;
    neg.scale(-1.0);
    const GradientVector gu = grad_gagliardo(ws, u, GagliardoKind::full);
    const GradientVector gn = grad_gagliardo(ws, neg, GagliardoKind::full);
    for (std::size_t i = 0; i < gu.size(); ++i) CHECK(gn[i] == -gu[i]);
  }

  SUBCASE("beta has to match the boundary tag") {
    const Field u = random_field(g, BoundaryCondition::neumann, rng);
    CHECK_THROWS_AS(
        (void)grad_gagliardo(ws, u, GagliardoKind::star, &beta),
        std::invalid_argument);
    const Field r = random_field(g, BoundaryCondition::robin, rng);
    CHECK_THROWS_AS((void)grad_gagliardo(ws, r, GagliardoKind::star),
                    std::invalid_argument);
  }
}

TEST_CASE("discrete integration by parts is a rearrangement identity") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 12, 2.0);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F, g, 0.5);
  std::mt19937_64 rng(19);
  for (int k = 0; k < 50; ++k) {
    const Field u = random_field(g, BoundaryCondition::neumann, rng, 0.5);
    const Field v = random_field(g, BoundaryCondition::neumann, rng, 0.5);
    const double lhs = pairing_star(ws, u, v);
    const GradientVector rows = grad_gagliardo(ws, u, GagliardoKind::star);
    SumBuffer acc(g.node_count());
    for (std::size_t i = g.interior_begin();
         i < g.interior_begin() + g.interior_count(); ++i) {
      acc.push(v[i] * rows[i]);
    }
    for (std::size_t e = 0; e < g.exterior_count(); ++e) {
      const std::size_t node = g.exterior_node(e);
      acc.push(v[node] * normal_derivative(ws, u, node) * g.spacing());
    }
    CHECK(std::abs(lhs - acc.total()) <= 1e-12);
  }
}

TEST_CASE("operator monotonicity") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 10, 1.5);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F, g, 0.5);
  const BcSpec bc = BcSpec::dirichlet();
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
    const Field v = random_field(g, BoundaryCondition::dirichlet, rng);
    const GradientVector gu = grad_j(ws, u, bc);
    const GradientVector gv = grad_j(ws, v, bc);
    std::vector<double> diff(u.size()), half(u.size()), gdiff(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      diff[i] = u[i] - v[i];
      half[i] = 0.5 * diff[i];
      gdiff[i] = gu[i] - gv[i];
    }
    const double lhs = pairwise_dot(gdiff, diff);
    const double rhs =
        4.0 * ws.gagliardo(Field(g, BoundaryCondition::dirichlet, half),
                           GagliardoKind::full);
    CHECK(rhs >= 0.0);
    CHECK(lhs >= rhs - 1e-10 * (1.0 + std::abs(lhs)));
  }
}
