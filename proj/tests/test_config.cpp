#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <string>

#include "fgl/config.hpp"
#include "fgl/errors.hpp"
#include "fgl/verify.hpp"

using namespace fgl;

TEST_CASE("minimal config fills the documented defaults") {
  const RunConfig cfg = parse_config("young = { family = \"power\", p = 2.0 }\n");
  CHECK(cfg.mode == RunMode::solve_min_j);
  CHECK_FALSE(cfg.mode_explicit);
  CHECK(cfg.young_family == "power");
  CHECK(cfg.young_p == 2.0);
  CHECK(cfg.collar == 4.0);
  CHECK(cfg.tol_residual == 1e-8);
  CHECK(cfg.seed == 42);
  CHECK(cfg.alphas == std::vector<double>{1.0});
  CHECK(cfg.n_interior == 64);
  CHECK(cfg.initial_guess == "first-linear-mode");
}

TEST_CASE("validation failures name the field") {
  auto field_of = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("(no error)");
  };

  CHECK(field_of("alpha = -1.0\n") == "alpha");
  CHECK(field_of("bc = \"robin\"\nbeta = -1.0\n") == "beta");
  CHECK(field_of("bc = \"robin\"\n") == "beta");
  CHECK(field_of("bc = \"dirichlet\"\nbeta = 1.0\n") == "beta");
  CHECK(field_of("s = 1.5\n") == "s");
  CHECK(field_of("domain = { n_interior = 2 }\n") == "domain.n_interior");
  CHECK(field_of("young = { family = \"exp\" }\n") == "young.family");
  CHECK(field_of("young = { family = \"powersum\" }\n") == "young.terms");
  CHECK(field_of("frobnicate = 1\n") == "frobnicate");
  CHECK(field_of("solver = { max_iter = 0 }\n") == "solver.max_iter");
  CHECK(field_of("alpha = [1.0, 0.5]\n") == "alpha");
}

TEST_CASE("parse diagnostics carry line numbers") {
  try {
    (void)parse_config("s = 0.5\n\nalpha = oops\n");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_config("alpha = 1.0\nalpha = 2.0\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("s 0.5\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("alpha = [1.0, 2.0\n"), ConfigError);
}

TEST_CASE("config round trip is stable") {
  const std::string inputs[] = {
      "young = { family = \"power\", p = 3.0 }\nalpha = 0.25\n",
      "mode = \"sweep\"\n"
      "young = { family = \"powersum\", terms = [[1.0, 2.0], [1.0, 4.0]] }\n"
      "alpha = [0.5, 1.0, 2.0]\nobjective = \"min-j\"\n",
      "mode = \"solve-maxI\"\nbc = \"robin\"\nbeta = 1.5\n"
      "domain = { lo = 0.0, hi = 1.0, n_interior = 32, collar = 2.0 }\n"
      "s = 0.3\nseed = 7\n"
      "solver = { tol_residual = 1e-7, max_iter = 200 }\n",
  };
  for (const std::string& text : inputs) {
    const std::string once = emit_config(parse_config(text));
    const std::string twice = emit_config(parse_config(once));
    CHECK(once == twice);
  }
}

TEST_CASE("round trip holds for randomly generated configs") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](auto... options) {
    const std::array arr{options...};
    return arr[rng() % arr.size()];
  };
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig cfg;
    cfg.mode = pick(RunMode::solve_min_j, RunMode::solve_max_i,
                    RunMode::minimax_k2, RunMode::sweep, RunMode::verify,
                    RunMode::oracle);
    if (unit(rng) < 0.5) {
      cfg.young_family = "power";
      cfg.young_p = 1.0 + 4.0 * unit(rng);
    } else {
      cfg.young_family = "powersum";
      cfg.young_terms = {{0.1 + unit(rng), 1.5 + unit(rng)},
                         {0.1 + unit(rng), 3.0 + unit(rng)}};
    }
    cfg.domain_lo = -2.0 * unit(rng) - 0.1;
    cfg.domain_hi = 2.0 * unit(rng) + 0.1;
    cfg.n_interior = 4 + int(rng() % 60);
    cfg.collar = 0.5 + 3.0 * unit(rng);
    cfg.s = 0.05 + 0.9 * unit(rng);
    cfg.bc = pick(BoundaryCondition::dirichlet, BoundaryCondition::neumann,
                  BoundaryCondition::robin);
    if (cfg.bc == BoundaryCondition::robin) cfg.beta_constant = 2.0 * unit(rng);
    cfg.alphas.clear();
    double a = 0.1 + unit(rng);
    for (int k = 0, n = 1 + int(rng() % 4); k < n; ++k) {
      cfg.alphas.push_back(a);
      a += 0.1 + unit(rng);
    }
    cfg.seed = rng() % 10000;
    cfg.tol_residual = std::pow(10.0, -4.0 - 6.0 * unit(rng));
    cfg.max_iter = 1 + int(rng() % 9999);
    cfg.minimax_theta_samples = 16 + int(rng() % 500);
    cfg.initial_guess =
        pick(std::string("first-linear-mode"), std::string("random-symmetric"));

    const std::string text = emit_config(cfg);
    const std::string twice = emit_config(parse_config(text));
    CHECK(text == twice);
  }
}

TEST_CASE("comments and inline tables parse") {
  const RunConfig cfg = parse_config(
      "# header comment\n"
      "young = { family = \"powersum\", terms = [[2.0, 2.0], [0.5, 3.5]] }  # inline\n"
      "domain.lo = -2.0   # dotted keys work outside tables too\n"
      "domain.hi = 2.0\n"
      "bc = \"neumann\"\n");
  CHECK(cfg.young_terms.size() == 2);
  CHECK(cfg.young_terms[1].exponent == 3.5);
  CHECK(cfg.domain_lo == -2.0);
  CHECK(cfg.bc == BoundaryCondition::neumann);
}

TEST_CASE("factory helpers build consistent objects") {
  const RunConfig cfg = parse_config(
      "bc = \"robin\"\nbeta = 0.5\n"
      "domain = { lo = -1.0, hi = 1.0, n_interior = 8, collar = 1.0 }\n");
  const Grid1D grid = cfg.make_grid();
  CHECK(grid.interior_count() == 8);
  const BcSpec bc = cfg.make_bc(grid);
  CHECK(bc.kind == BoundaryCondition::robin);
  REQUIRE(bc.beta.has_value());
  CHECK(bc.beta->size() == grid.exterior_count());

  // beta tables must match the exterior node count
  RunConfig bad = cfg;
  bad.beta_constant.reset();
  bad.beta_table = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)bad.make_bc(grid), ConfigError);
}

TEST_CASE("corrupting the complementary function trips the Young suite") {
  const YoungFunction F = YoungFunction::power(2.0);
  const auto clean = verify_detail::young_inequality_check(
      [&F](double t) { return F.G(t); },
      [&F](double t) { return F.gtilde(t); }, 5000, 42);
  CHECK(clean.pass);

  const auto corrupted = verify_detail::young_inequality_check(
      [&F](double t) { return F.G(t); },
      [&F](double t) { return F.gtilde(t) / 1.1; }, 5000, 42);
  CHECK_FALSE(corrupted.pass);
  CHECK(corrupted.violations > 0);
}
