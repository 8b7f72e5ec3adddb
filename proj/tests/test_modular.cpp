#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fgl/modular.hpp"

using namespace fgl;

namespace {

Field random_field(const Grid1D& g, BoundaryCondition bc, std::mt19937_64& rng,
                   double amp = 1.0) {
  std::uniform_real_distribution<double> unit(-amp, amp);
  std::vector<double> v(g.node_count());
  for (double& x : v) x = unit(rng);
  return Field(g, bc, v);
}

}  // namespace

TEST_CASE("bulk modular") {
  const Grid1D g = Grid1D::build(0.0, 1.0, 64, 2.0);
  const YoungFunction F = YoungFunction::power(2.0);
  const ModularWorkspace ws(F, g, 0.5);

  const Field ones(g, BoundaryCondition::neumann,
                   std::vector<double>(g.node_count(), 1.0));
  CHECK(ws.bulk(ones) == doctest::Approx(1.0).epsilon(1e-13));

  CHECK(ws.bulk(Field(g, BoundaryCondition::neumann)) == 0.0);

  const Grid1D g128 = Grid1D::build(0.0, 1.0, 128, 2.0);
  const ModularWorkspace ws128(F, g128, 0.5);
  std::vector<double> coords(g128.nodes().begin(), g128.nodes().end());
  const Field x(g128, BoundaryCondition::neumann, coords);
  CHECK(std::abs(ws128.bulk(x) - 1.0 / 3.0) < 1e-4);
}

TEST_CASE("Gagliardo modulars") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 16, 2.0);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F, g, 0.4);
  std::mt19937_64 rng(5);

  CHECK(ws.gagliardo(Field(g, BoundaryCondition::dirichlet),
                     GagliardoKind::full) == 0.0);

  const Field c(g, BoundaryCondition::neumann,
                std::vector<double>(g.node_count(), 2.5));
  CHECK(ws.gagliardo(c, GagliardoKind::star) == 0.0);

  // For a Dirichlet extension the full sum decomposes into the star sum plus
  // the exterior-exterior block, and the block vanishes identically.
  for (int k = 0; k < 10; ++k) {
    const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
    const double full = ws.gagliardo(u, GagliardoKind::full);
    const double star = ws.gagliardo(u, GagliardoKind::star);
    double ext_ext = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      if (g.is_interior(i)) continue;
      for (std::size_t j = i + 1; j < g.node_count(); ++j) {
        if (g.is_interior(j)) continue;
        ext_ext += 2.0 * F.G(std::abs(holder_quotient(g, u, i, j, 0.4))) *
                   pair_weight(g, i, j);
      }
    }
    CHECK(ext_ext == 0.0);
    CHECK(full == star + ext_ext);
  }

  CHECK_THROWS_AS(
      (void)ws.gagliardo(c, GagliardoKind::full), std::invalid_argument);
}

TEST_CASE("Robin exterior modular") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 8, 1.0);
  const YoungFunction F = YoungFunction::power(2.0);
  const ModularWorkspace ws(F, g, 0.5);
  const Field ones(g, BoundaryCondition::robin,
                   std::vector<double>(g.node_count(), 1.0));

  CHECK(ws.robin_exterior(ones, RobinWeight::constant(g, 0.0)) == 0.0);
  CHECK(ws.robin_exterior(Field(g, BoundaryCondition::robin),
                          RobinWeight::constant(g, 1.0)) == 0.0);

  const double exterior_measure = double(g.exterior_count()) * g.spacing();
  CHECK(ws.robin_exterior(ones, RobinWeight::constant(g, 1.0)) ==
        doctest::Approx(exterior_measure).epsilon(1e-13));

  CHECK_THROWS_AS(RobinWeight::constant(g, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(RobinWeight::table(g, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("Luxemburg norms") {
  const Grid1D g = Grid1D::build(0.0, 1.0, 64, 2.0);
  const YoungFunction F2 = YoungFunction::power(2.0);
  const ModularWorkspace ws(F2, g, 0.5);

  const Field ones(g, BoundaryCondition::neumann,
                   std::vector<double>(g.node_count(), 1.0));
  CHECK(ws.luxemburg_norm(ones, ModularKind::bulk()) ==
        doctest::Approx(1.0).epsilon(1e-10));
  Field twos = ones;
  twos.scale(2.0);
  CHECK(ws.luxemburg_norm(twos, ModularKind::bulk()) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ws.luxemburg_norm(Field(g, BoundaryCondition::neumann),
                          ModularKind::bulk()) == 0.0);

  // Pure powers: the norm is the p-th root of the modular.
  std::mt19937_64 rng(23);
  const YoungFunction F3 = YoungFunction::power(3.0);
  const ModularWorkspace ws3(F3, g, 0.5);
  for (int k = 0; k < 20; ++k) {
    const Field u = random_field(g, BoundaryCondition::dirichlet, rng, 2.0);
    const double m = ws3.gagliardo(u, GagliardoKind::full);
    CHECK(ws3.luxemburg_norm(u, ModularKind::gagliardo_full()) ==
          doctest::Approx(std::pow(m, 1.0 / 3.0)).epsilon(1e-9));
  }
}

TEST_CASE("norm-modular sandwich") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 12, 1.5);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F, g, 0.5);
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    const Field u = random_field(g, BoundaryCondition::neumann, rng, 2.0);
    const double phi = ws.bulk(u);
    const auto [lo, hi] =
        F.xi_bounds(ws.luxemburg_norm(u, ModularKind::bulk()));
    CHECK(lo <= phi * (1.0 + 1e-8) + 1e-8);
    CHECK(phi <= hi * (1.0 + 1e-8) + 1e-8);

    const Field w = random_field(g, BoundaryCondition::dirichlet, rng, 2.0);
    const double phi_g = ws.gagliardo(w, GagliardoKind::full);
    const auto [glo, ghi] =
        F.xi_bounds(ws.luxemburg_norm(w, ModularKind::gagliardo_full()));
    CHECK(glo <= phi_g * (1.0 + 1e-8) + 1e-8);
    CHECK(phi_g <= ghi * (1.0 + 1e-8) + 1e-8);
  }
}

TEST_CASE("modulars are even and strictly monotone under scaling") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 12, 1.5);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws(F, g, 0.5);
  std::mt19937_64 rng(31);
  const Field u = random_field(g, BoundaryCondition::dirichlet, rng);
  Field neg = u;
  neg.scale(-1.0);
  CHECK(ws.bulk(neg) == ws.bulk(u));
  CHECK(ws.gagliardo(neg, GagliardoKind::full) ==
        ws.gagliardo(u, GagliardoKind::full));

  double prev = 0.0;
  for (double t : {0.5, 1.0, 1.7, 2.4}) {
    const double m = ws.evaluate_scaled(u, ModularKind::gagliardo_full(), t);
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("Hölder product bound") {
  const Grid1D g = Grid1D::build(0.0, 1.0, 24, 1.5);
  const YoungFunction F2 = YoungFunction::power(2.0);
  const ModularWorkspace ws2(F2, g, 0.5);
  std::mt19937_64 rng(37);

  // Zero left factor.
  const auto [z_lhs, z_rhs] = ws2.holder_check(
      Field(g, BoundaryCondition::neumann),
      random_field(g, BoundaryCondition::neumann, rng));
  CHECK(z_lhs == 0.0);
  CHECK(z_rhs >= 0.0);

  // Quadratic case on u = v: reduces to Cauchy-Schwarz, tight at factor 2.
  const Field u = random_field(g, BoundaryCondition::neumann, rng);
  const auto [lhs_uu, rhs_uu] = ws2.holder_check(u, u);
  CHECK(lhs_uu == doctest::Approx(2.0 * rhs_uu).epsilon(1e-9));

  // Factor-2 form under fuzzing, quadratic and non-homogeneous families.
  const YoungFunction F24 = YoungFunction::power_sum({{1.0, 2.0}, {1.0, 4.0}});
  const ModularWorkspace ws24(F24, g, 0.5);
  for (int k = 0; k < 500; ++k) {
    const Field a = random_field(g, BoundaryCondition::neumann, rng, 2.0);
    const Field b = random_field(g, BoundaryCondition::neumann, rng, 2.0);
    const auto [l2, r2] = ws2.holder_check(a, b);
    CHECK(l2 <= 2.0 * r2 * (1.0 + 1e-10));
    const auto [l24, r24] = ws24.holder_check(a, b);
    CHECK(l24 <= 2.0 * r24 * (1.0 + 1e-10));
  }
}

TEST_CASE("scaling laws agree with direct re-evaluation") {
  const Grid1D g = Grid1D::build(-1.0, 1.0, 10, 1.0);
  const YoungFunction F = YoungFunction::power_sum({{1.0, 2.0}, {0.5, 4.0}});
  const ModularWorkspace ws(F, g, 0.5);
  std::mt19937_64 rng(41);
  const RobinWeight beta = RobinWeight::constant(g, 0.7);

  const Field u = random_field(g, BoundaryCondition::robin, rng);
  for (const ModularKind& kind :
       {ModularKind::bulk(), ModularKind::gagliardo_star(),
        ModularKind::robin(beta)}) {
    const auto law = modular_scaling(ws, u, kind);
    REQUIRE(law.has_value());
    for (double t : {0.3, 1.0, 2.9}) {
      Field scaled = u;
      scaled.scale(t);
      CHECK(law->eval(t) ==
            doctest::Approx(ws.evaluate(scaled, kind)).epsilon(1e-12));
    }
  }

  // Custom Young functions have no ray profile; the scaled evaluator falls
  // back to direct evaluation.
  const YoungFunction custom = YoungFunction::custom(
      [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
  const ModularWorkspace wsc(custom, g, 0.5);
  const Field w = random_field(g, BoundaryCondition::neumann, rng);
  CHECK_FALSE(modular_scaling(wsc, w, ModularKind::bulk()).has_value());
  Field w2 = w;
  w2.scale(1.3);
  CHECK(wsc.evaluate_scaled(w, ModularKind::bulk(), 1.3) ==
        doctest::Approx(wsc.bulk(w2)).epsilon(1e-13));

  // The bracketing Luxemburg path agrees with the quadratic closed form.
  CHECK(wsc.luxemburg_norm(w, ModularKind::bulk()) ==
        doctest::Approx(std::sqrt(wsc.bulk(w))).epsilon(1e-9));
}
