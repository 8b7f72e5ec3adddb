import math

import pytest

import fgl


@pytest.fixture(scope="module")
def workspace():
    F = fgl.YoungFunction.power(2.0)
    grid = fgl.Grid1D.build(-1.0, 1.0, 16, 2.0)
    return F, grid, fgl.Workspace(F, grid, 0.5)


def test_young_function_basics():
    F = fgl.YoungFunction.power_sum([(1.0, 2.0), (1.0, 4.0)])
    assert F.G(1.0) == pytest.approx(2.0)
    assert F.p_minus() == 2.0
    assert F.p_plus() == 4.0
    assert F.invert_G(2.0) == pytest.approx(1.0, rel=1e-10)
    # conjugacy: equality case of the Young inequality at b = g(a)
    a = 1.3
    b = F.g(a)
    assert a * b == pytest.approx(F.G(a) + F.gtilde(b), rel=1e-10)


def test_structure_verification_gates_bad_functions():
    report = fgl.verify_structure(fgl.YoungFunction.power(1.5), 0.5, 1)
    assert report["growth_ok"]
    assert not report["sqrt_convex_ok"]
    assert not report["solver_admissible"]

    good = fgl.verify_structure(fgl.YoungFunction.power(2.0), 0.5, 1)
    assert good["all_pass"]


def test_grid_and_field(workspace):
    _, grid, _ = workspace
    assert grid.interior_count == 16
    assert grid.node_count == grid.interior_count + grid.exterior_count
    u = fgl.Field(grid, "dirichlet", [1.0] * grid.node_count)
    values = u.values()
    assert values[0] == 0.0  # exterior zeroed for Dirichlet
    assert any(v == 1.0 for v in values)


def test_modulars_and_norms(workspace):
    F, grid, ws = workspace
    ones = fgl.Field(grid, "neumann", [1.0] * grid.node_count)
    assert ws.gagliardo(ones, "star") == 0.0
    assert ws.bulk(ones) == pytest.approx(2.0, rel=1e-12)  # |Omega| = 2
    assert ws.luxemburg_norm(ones, "bulk") == pytest.approx(
        math.sqrt(2.0), rel=1e-9
    )


def test_solver_matches_oracle(workspace):
    _, grid, ws = workspace
    spec = fgl.oracle_spectrum(grid, 0.5)
    result = fgl.minimize_j_on_i(ws, alpha=1.0, initial_guess="random-symmetric")
    assert result["converged"]
    assert result["lambda"] == pytest.approx(spec["eigenvalues"][0], rel=1e-6)

    ascent = fgl.maximize_i_on_j(ws, alpha=1.0)
    assert ascent["value_I"] * ascent["lambda"] == pytest.approx(1.0, abs=1e-8)


def test_minimax_upper_bound(workspace):
    _, grid, ws = workspace
    spec = fgl.oracle_spectrum(grid, 0.5)
    k2 = fgl.minimax_k2(ws, alpha=1.0, basis_pairs=3, theta_samples=64)
    assert k2["upper_bound"]
    assert k2["value_J"] == pytest.approx(spec["eigenvalues"][1], rel=1e-6)


def test_sweep_rows_converge():
    F = fgl.YoungFunction.power_sum([(1.0, 2.0), (1.0, 4.0)])
    grid = fgl.Grid1D.build(-1.0, 1.0, 12, 1.5)
    ws = fgl.Workspace(F, grid, 0.5)
    sweep = fgl.sweep_alpha(ws, [0.5, 1.0, 1.5])
    assert all(row["converged"] for row in sweep["rows"])
    assert sweep["inf_lambda"] == min(row["lambda"] for row in sweep["rows"])


def test_verify_suites_pass():
    F = fgl.YoungFunction.power_sum([(1.0, 2.0), (1.0, 4.0)])
    grid = fgl.Grid1D.build(-1.0, 1.0, 12, 1.5)
    report = fgl.run_verify(F, grid, 0.5, samples=500, seed=1)
    assert report["all_hard_pass"]
    names = {p["name"] for p in report["properties"]}
    assert "young-inequality" in names
    assert "integration-by-parts" in names
