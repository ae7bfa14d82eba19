import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import ellipj, ellipk

from magnetic_curves.exceptions import DomainError, UnboundedOrbit, Unsupported
from magnetic_curves.solutions.elliptic import (
    QuarticEnergy,
    complete_K,
    energy_from_state,
    jacobi,
    reduced_acceleration_residual,
    reduced_energy_drift,
    solve_reduced,
)
from magnetic_curves.solutions.reduced import ReducedEquation


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 0.9, 0.999])
def test_complete_K_matches_scipy(m):
    assert complete_K(m) == pytest.approx(ellipk(m), rel=1e-14)


@pytest.mark.parametrize("m", [-0.1, 1.0, 1.5])
def test_complete_K_domain(m):
    with pytest.raises(DomainError):
        complete_K(m)


def test_jacobi_limits():
    u = np.linspace(-3.0, 3.0, 13)
    np.testing.assert_allclose(jacobi(u, 0.0), (np.sin(u), np.cos(u), np.ones_like(u)))
    np.testing.assert_allclose(jacobi(u, 1.0), (np.tanh(u), 1 / np.cosh(u), 1 / np.cosh(u)))
    assert jacobi(0.0, 0.7) == (0.0, 1.0, 1.0)


@pytest.mark.parametrize("m", [0.2, 2.0 / 3.0, 0.95])
def test_jacobi_at_quarter_period(m):
    sn, cn, dn = jacobi(complete_K(m), m)
    assert sn == pytest.approx(1.0, abs=1e-12)
    assert cn == pytest.approx(0.0, abs=1e-12)
    assert dn == pytest.approx(math.sqrt(1.0 - m), abs=1e-12)


def test_jacobi_domain():
    with pytest.raises(DomainError):
        jacobi(0.5, 1.2)


@settings(max_examples=300)
@given(u=st.floats(min_value=-20.0, max_value=20.0), m=st.floats(min_value=0.0, max_value=0.99))
def test_jacobi_identities_and_reference(u, m):
    sn, cn, dn = jacobi(u, m)
    assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
    assert dn * dn + m * sn * sn == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose((sn, cn, dn), ellipj(u, m)[:3], atol=1e-11)


def test_energy_roots():
    energy = QuarticEnergy(-1.0, 1.0, 0.0, -0.1875)
    assert [v for v, _ in energy.squared_roots()] == pytest.approx([0.25, 0.75])
    assert [u for u, _ in energy.real_roots()] == pytest.approx([-math.sqrt(0.75), -0.5, 0.5, math.sqrt(0.75)])


def test_energy_requires_zero_c():
    with pytest.raises(Unsupported):
        energy_from_state(ReducedEquation("g2-v3", c=0.2), 0.5, 0.0)


def test_dn_orbit_of_double_well():
    r = ReducedEquation("g2-v3", lam=1.0)
    solution = solve_reduced(r, (0.5, 0.0), np.linspace(0.0, 6.0, 601))
    assert solution.kind == "dn"
    assert solution.period == pytest.approx(2.0 * complete_K(2.0 / 3.0) / math.sqrt(0.75), rel=1e-12)
    assert solution.u.min() >= 0.5 - 1e-12
    assert solution.u.max() == pytest.approx(math.sqrt(0.75), abs=1e-4)
    assert solution.u.max() <= math.sqrt(0.75) + 1e-12
    assert reduced_energy_drift(r, solution) < 1e-12
    assert reduced_acceleration_residual(r, solution) < 1e-3


def test_sn_orbit():
    r = ReducedEquation("g1-v3", lam=1.0)
    solution = solve_reduced(r, (0.5, 0.0), np.linspace(0.0, 8.0, 401))
    assert solution.kind == "sn"
    assert solution.period == pytest.approx(4.0 * complete_K(1.0 / 3.0) / math.sqrt(0.75), rel=1e-12)
    assert np.abs(solution.u).max() <= 0.5 + 1e-12
    assert reduced_energy_drift(r, solution) < 1e-12


def test_cn_orbit():
    r = ReducedEquation("g2-v3", lam=1.0)
    solution = solve_reduced(r, (0.0, 1.0), np.linspace(0.0, 4.0, 201))
    assert solution.kind == "cn"
    assert solution.up[0] == pytest.approx(1.0, abs=1e-12)
    assert solution.u[0] == pytest.approx(0.0, abs=1e-12)
    assert reduced_energy_drift(r, solution) < 1e-12


@pytest.mark.parametrize("init", [(0.5, 0.0), (0.6, -0.05), (0.0, 1.0)])
def test_quadrature_agrees_with_jacobi(init):
    r = ReducedEquation("g2-v3", lam=1.0)
    grid = np.linspace(0.0, 3.0, 31)
    closed = solve_reduced(r, init, grid)
    numeric = solve_reduced(r, init, grid, method="quadrature")
    np.testing.assert_allclose(numeric.u, closed.u, atol=1e-7)
    np.testing.assert_allclose(numeric.up, closed.up, atol=1e-6)


def test_equilibrium():
    r = ReducedEquation("g2-v3", lam=1.0)
    solution = solve_reduced(r, (1 / math.sqrt(2.0), 0.0), [0.0, 1.0, 2.0])
    assert solution.kind == "equilibrium"
    np.testing.assert_allclose(solution.u, 1 / math.sqrt(2.0))


def test_escaping_orbit_raises():
    with pytest.raises(UnboundedOrbit):
        solve_reduced(ReducedEquation("g1-v2"), (0.2, 0.0), np.linspace(0.0, 10.0, 11))


@pytest.mark.parametrize("grid,method", [([1.0, 0.0], "auto"), ([], "auto"), ([0.0, 1.0], "rk4")])
def test_bad_arguments(grid, method):
    with pytest.raises(DomainError):
        solve_reduced(ReducedEquation("g2-v3"), (0.5, 0.0), grid, method=method)


@pytest.mark.parametrize("m", [0.2, 2.0 / 3.0, 0.95])
def test_jacobi_on_grid_through_quarter_periods(m):
    K = complete_K(m)
    u = np.concatenate([
        np.linspace(-4.0 * K, 4.0 * K, 161),
        K * np.arange(-4, 5),
        K * np.array([1.0 - 1e-15, 1.0 + 1e-15, 3.0 - 1e-15, 3.0 + 1e-15]),
    ])
    np.testing.assert_allclose(jacobi(u, m), ellipj(u, m)[:3], atol=1e-11)


@pytest.mark.parametrize("m", [0.2, 2.0 / 3.0, 0.95])
@pytest.mark.parametrize("j", [1, 3])
def test_dn_at_odd_quarter_periods(m, j):
    K = complete_K(m)
    for u in (j * K, j * K * (1.0 - 1e-15), j * K * (1.0 + 1e-15)):
        sn, cn, dn = jacobi(u, m)
        assert dn == pytest.approx(math.sqrt(1.0 - m), abs=1e-12)
        assert abs(sn) == pytest.approx(1.0, abs=1e-12)
        assert cn == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("m", [0.0, 0.3, 2.0 / 3.0, 0.9])
def test_jacobi_derivatives(m):
    h = 1e-5
    K = complete_K(m)
    u = np.concatenate([np.linspace(-5.0, 5.0, 41), K * np.arange(0, 5)])
    sn, cn, dn = jacobi(u, m)
    sn_p, cn_p, dn_p = jacobi(u + h, m)
    sn_m, cn_m, dn_m = jacobi(u - h, m)
    np.testing.assert_allclose((sn_p - sn_m) / (2 * h), cn * dn, atol=1e-8)
    np.testing.assert_allclose((cn_p - cn_m) / (2 * h), -sn * dn, atol=1e-8)
    np.testing.assert_allclose((dn_p - dn_m) / (2 * h), -m * sn * cn, atol=1e-8)


@pytest.mark.parametrize("up0", [0.0, 1e-9, -1e-9])
def test_dn_orbit_starts_at_initial_state(up0):
    r = ReducedEquation("g2-v3", lam=1.0)
    solution = solve_reduced(r, (0.5, up0), np.linspace(0.0, 1.0, 11))
    assert solution.kind == "dn"
    assert solution.u[0] == pytest.approx(0.5, abs=1e-12)
    assert solution.up[0] == pytest.approx(up0, abs=1e-12)
    assert solution.u.min() >= 0.5 - 1e-12
