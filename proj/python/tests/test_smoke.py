import math

import numpy as np
import pytest

import cqnp


def test_width_examples():
    assert cqnp.solve_width(0.0, 0.0) == 1.0
    assert cqnp.solve_width(3.0, 0.0) == pytest.approx(2.0, abs=1e-12)
    assert cqnp.solve_width(-2.0, -2.0) is None
    s = cqnp.solve_width(1.0, 1.0)
    assert cqnp.width_residual(1.0, 1.0, s) == pytest.approx(0.0, abs=1e-12)
    assert cqnp.weak_width(0.4, 0.3) == pytest.approx(1.0 + 0.1 + 0.1)


def test_width_map_shape_and_invalid_region():
    grid = cqnp.width_map(resolution=21)
    assert grid.shape == (21, 21)
    assert math.isnan(grid[0, 0])
    assert grid[10, 10] == 1.0


def test_np_forms_agree():
    for a3, a5 in [(1.0, 1.0), (0.3, -0.1), (-0.5, 0.8)]:
        assert cqnp.np_general_radical(a3, a5) == pytest.approx(cqnp.np_general(a3, a5), abs=1e-10)
    assert cqnp.np_general(0.5, 0.0) == pytest.approx(cqnp.np_cubic(0.5), abs=1e-12)
    assert cqnp.matched_g3(1.0, 0.75) == pytest.approx(-1.0)
    with pytest.raises(cqnp.CollapseError):
        cqnp.np_general(-2.0, -2.0)


def test_harmonic_ground_state():
    gs = cqnp.ground_state_1d("np", points=257, dt=0.01, mu_tol=1e-12)
    assert gs["converged"]
    assert gs["mu"] == pytest.approx(1.05, abs=1e-4)
    x, rho = gs["x"], gs["density"]
    assert rho.sum() * (x[1] - x[0]) == pytest.approx(1.0, abs=1e-6)
    assert rho.max() == pytest.approx(math.sqrt(0.1 / math.pi), abs=1e-4)


def test_run_scenario(tmp_path):
    code, err = cqnp.run("width-map", f"output.dir = {tmp_path}\nwidth_map.resolution = 5\n")
    assert code == 0, err
    rows = (tmp_path / "width_map.csv").read_text().splitlines()
    assert rows[0] == "a3,a5,s,status"
    assert len(rows) == 26
    with pytest.raises(cqnp.ConfigError):
        cqnp.run("width-map", "grid1d.points = -1")
