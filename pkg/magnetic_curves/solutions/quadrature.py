"""
Height Reconstruction
=====================

Recover z(t) from x(t), y(t) and the first integral I = c:

    z' = c - offset(x, y) - x y'

by adaptive quadrature (scipy.integrate.quad).
"""

import warnings

import numpy as np
from scipy import integrate

from magnetic_curves.dynamics.lorentz import integral_offset
from magnetic_curves.exceptions import QuadratureFailure

DEFAULT_TOL = 1e-12
_FD_STEP = 1e-6


def _derivative(fun, step=_FD_STEP):
    def d(s):
        return (fun(s + step) - fun(s - step)) / (2.0 * step)

    return d


def height_rate(p, k, c, x, y, yp):
    """z' on a curve with first integral c (elementwise)."""
    return c - integral_offset(p, k, x, y) - x * yp


def integrate_interval(integrand, a, b, tol=DEFAULT_TOL, limit=200):
    """Definite integral of integrand over [a, b] (b may be inf); QuadratureFailure on quad warnings."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.quad(integrand, a, b, epsabs=tol, epsrel=tol, limit=limit)
        except integrate.IntegrationWarning as e:
            raise QuadratureFailure(f"quadrature on [{a:g}, {b:g}] failed: {e}") from e
    if not np.isfinite(value):
        raise QuadratureFailure(f"quadrature on [{a:g}, {b:g}] returned {value}")
    return value


def z_by_quadrature(p, k, xfun, yfun, c, z0, t, dyfun=None, t0=0.0, tol=DEFAULT_TOL, limit=200):
    """
    z(t) = z0 + integral from t0 to t of (c - offset(x, y) - x y') ds.

    Args:
        p: ModelParams
        k: KillingId
        xfun, yfun: Callables s -> x(s), y(s)
        c: First-integral constant
        z0: z(t0)
        t: Upper limit
        dyfun: Optional analytic y'(s); central differences otherwise
        t0: Lower limit
        tol: Absolute and relative quadrature tolerance

    Returns:
        float

    Raises:
        QuadratureFailure: If quad cannot reach the tolerance
    """
    dy = dyfun if dyfun is not None else _derivative(yfun)

    def integrand(s):
        return height_rate(p, k, c, xfun(s), yfun(s), dy(s))

    if t == t0:
        return float(z0)
    return float(z0 + integrate_interval(integrand, t0, t, tol, limit))


def z_on_grid(p, k, xfun, yfun, c, z0, grid, dyfun=None, tol=DEFAULT_TOL, limit=200):
    """
    z at every point of an ascending grid, accumulated interval by interval
    from z(grid[0]) = z0.
    """
    grid = np.asarray(grid, dtype=float)
    dy = dyfun if dyfun is not None else _derivative(yfun)

    def integrand(s):
        return height_rate(p, k, c, xfun(s), yfun(s), dy(s))

    pieces = [integrate_interval(integrand, a, b, tol, limit) for a, b in zip(grid[:-1], grid[1:])]
    return z0 + np.concatenate([[0.0], np.cumsum(pieces)])
