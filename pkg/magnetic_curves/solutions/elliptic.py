"""
Elliptic Solutions
==================

Jacobi elliptic functions by the arithmetic-geometric mean and descending
Landen transformation, and exact solutions of the reduced equations at c = 0.

At c = 0 each reduced equation is u'' = 2 q4 u^3 + q2 u, so

    u'^2 = F(u) = q4 u^4 + q2 u^2 + q0 + E

with E fixed by the initial state. Bounded orbits are written through sn, cn
or dn; every other orbit (and any orbit when method="quadrature") is obtained
by inverting t = integral du / sqrt(F(u)) with adaptive quadrature and
bracketed root finding.

The elliptic parameter is m = k^2 throughout.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import ellipkinc

from magnetic_curves.exceptions import DomainError, QuadratureFailure, Unsupported, UnboundedOrbit
from magnetic_curves.solutions.quadrature import DEFAULT_TOL, integrate_interval
from magnetic_curves.solutions.reduced import reduced_rhs

logger = logging.getLogger(__name__)

BRACKET_TOL = 1e-13
_AGM_MAX_ITER = 60
# below this distance from 1 the first-order expansion in 1 - m is exact to double precision
_NEAR_ONE = 1e-14


def agm(a, b):
    """Arithmetic-geometric mean of two non-negative numbers."""
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return a


def complete_K(m):
    """
    Complete elliptic integral of the first kind, K(m) = pi / (2 agm(1, sqrt(1 - m))).

    Raises:
        DomainError: Unless 0 <= m < 1
    """
    m = float(m)
    if not (0.0 <= m < 1.0):
        raise DomainError(f"complete_K needs 0 <= m < 1, got {m}")
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - m)))


def jacobi(u, m):
    """
    Jacobi elliptic functions sn, cn, dn of argument u and parameter m.

    Args:
        u: Real argument (scalar or array)
        m: Parameter in [0, 1]

    Returns:
        (sn, cn, dn) with the shape of u
    """
    m = float(m)
    if not (0.0 <= m <= 1.0):
        raise DomainError(f"jacobi needs 0 <= m <= 1, got {m}")
    u = np.asarray(u, dtype=float)

    if m == 0.0:
        result = (np.sin(u), np.cos(u), np.ones_like(u))
    elif m == 1.0:
        sech = 1.0 / np.cosh(u)
        result = (np.tanh(u), sech, sech)
    elif 1.0 - m < _NEAR_ONE:
        m1 = 1.0 - m
        th, sech = np.tanh(u), 1.0 / np.cosh(u)
        sc = np.sinh(u) * np.cosh(u)
        result = (
            th + 0.25 * m1 * (sc - u) * sech * sech,
            sech - 0.25 * m1 * (sc - u) * th * sech,
            sech + 0.25 * m1 * (sc + u) * th * sech,
        )
    else:
        result = _landen(u, m)

    if result[0].ndim == 0:
        return tuple(float(v) for v in result)
    return result


def _landen(u, m):
    a = [1.0]
    c = [math.sqrt(m)]
    b = math.sqrt(1.0 - m)
    while abs(c[-1]) > 1e-16 and len(a) < _AGM_MAX_ITER:
        a_prev = a[-1]
        a.append(0.5 * (a_prev + b))
        c.append(0.5 * (a_prev - b))
        b = math.sqrt(a_prev * b)

    n = len(a) - 1
    phi = (2.0**n) * a[n] * u
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[i] / a[i] * np.sin(phi)))
    sn, cn = np.sin(phi), np.cos(phi)
    # dn >= sqrt(1 - m) > 0 for real u
    dn = np.sqrt(1.0 - m * sn * sn)
    return sn, cn, dn


@dataclass(frozen=True)
class QuarticEnergy:
    """
    F(u) = q4 u^4 + q2 u^2 + q0 + E, the square of u' on an orbit of energy E.
    """

    q4: float
    q2: float
    q0: float
    E: float

    @property
    def constant(self):
        return self.q0 + self.E

    def potential(self, u):
        u2 = u * u
        return self.q4 * u2 * u2 + self.q2 * u2 + self.q0

    def F(self, u):
        return self.potential(u) + self.E

    def dF(self, u):
        return 4.0 * self.q4 * u**3 + 2.0 * self.q2 * u

    def coefficients(self):
        """Polynomial coefficients of F, highest power first."""
        return np.array([self.q4, 0.0, self.q2, 0.0, self.constant])

    def squared_roots(self):
        """
        Real roots v of q4 v^2 + q2 v + (q0 + E) = 0 as (v, is_double) pairs,
        ascending.
        """
        e0 = self.constant
        q4, q2 = self.q4, self.q2
        scale = max(1.0, abs(q2) ** 2, abs(4.0 * q4 * e0))
        if abs(e0) <= 1e-14 * scale:
            return sorted([(0.0, True), (-q2 / q4, False)])
        disc = q2 * q2 - 4.0 * q4 * e0
        if abs(disc) <= 1e-14 * scale:
            return [(-q2 / (2.0 * q4), True)]
        if disc < 0:
            return []
        root = math.sqrt(disc)
        v1 = (-q2 - math.copysign(root, q2)) / (2.0 * q4)
        v2 = e0 / (q4 * v1)
        return sorted([(v1, False), (v2, False)])

    def real_roots(self):
        """Real roots of F in u as (u, is_double) pairs, ascending."""
        roots = []
        for v, double in self.squared_roots():
            if v == 0.0:
                roots.append((0.0, True))
            elif v > 0.0:
                r = math.sqrt(v)
                roots.extend([(-r, double), (r, double)])
        return sorted(roots)


def energy_from_state(r, u, up):
    """
    Quartic energy of the reduced orbit through (u, u').

    Raises:
        Unsupported: If r.c != 0
    """
    if r.c != 0.0:
        raise Unsupported("closed-form energies exist only for c = 0")
    q4, q2, q0 = r.quartic_coefficients()
    Q = q4 * u**4 + q2 * u**2 + q0
    return QuarticEnergy(q4, q2, q0, float(up * up - Q))


class ReducedSolution(NamedTuple):
    """Samples of a reduced solution and how they were obtained."""

    t: np.ndarray
    u: np.ndarray
    up: np.ndarray
    energy: QuarticEnergy
    kind: str
    period: Optional[float] = None


def _is_equilibrium(energy, u0, up):
    return up == 0.0 and abs(energy.dF(u0)) <= 1e-12 * max(1.0, abs(u0) ** 3)


def _jacobi_solution(energy, u0, up, tau):
    """sn/cn/dn closed form when the orbit is bounded, else None."""
    q4 = energy.q4
    e0 = energy.constant
    squared = energy.squared_roots()

    if q4 > 0:
        positive = [(v, d) for v, d in squared if v > 0]
        if not positive:
            return None
        if len(positive) == 2:
            b2, v2 = positive[0][0], positive[1][0]
        elif positive[0][1]:
            b2 = v2 = positive[0][0]
        else:
            return None
        if u0 * u0 > b2 * (1.0 + 1e-12):
            return None
        b = math.sqrt(b2)
        m = min(1.0, b2 / v2)
        omega = math.sqrt(q4 * v2)
        sigma = -1.0 if up < 0 else 1.0
        xi = ellipkinc(math.asin(max(-1.0, min(1.0, sigma * u0 / b))), m)
        sn, cn, dn = jacobi(omega * tau + xi, m)
        period = 4.0 * complete_K(m) / omega if m < 1.0 else None
        return "sn", sigma * b * sn, sigma * b * omega * cn * dn, period

    if e0 >= 0 or any(d and v == 0.0 for v, d in squared):
        # one positive root b^2; the other v root is -w^2 <= 0
        b2 = max(v for v, _ in squared)
        w2 = -min(v for v, _ in squared)
        if b2 <= 0.0:
            return None
        b = math.sqrt(b2)
        m = min(1.0, b2 / (b2 + w2))
        omega = math.sqrt(-q4 * (b2 + w2))
        reflect = -1.0 if (m == 1.0 and u0 < 0) else 1.0
        xi = ellipkinc(math.acos(max(-1.0, min(1.0, reflect * u0 / b))), m)
        if reflect * up > 0:
            xi = -xi
        sn, cn, dn = jacobi(omega * tau + xi, m)
        period = 4.0 * complete_K(m) / omega if m < 1.0 else None
        return "cn", reflect * b * cn, -reflect * b * omega * sn * dn, period

    if len(squared) == 2 and squared[0][0] > 0:
        a2, b2 = squared[0][0], squared[1][0]
    elif len(squared) == 1 and squared[0][0] > 0:
        a2 = b2 = squared[0][0]
    else:
        return None
    b = math.sqrt(b2)
    m = max(0.0, 1.0 - a2 / b2)
    omega = b * math.sqrt(-q4)
    s = -1.0 if u0 < 0 else 1.0
    ratio = (1.0 - u0 * u0 / b2) / m if m > 0 else 0.0
    xi = ellipkinc(math.asin(math.sqrt(max(0.0, min(1.0, ratio)))), m)
    if s * up > 0:
        xi = -xi
    sn, cn, dn = jacobi(omega * tau + xi, m)
    period = 2.0 * complete_K(m) / omega
    return "dn", s * b * dn, -s * b * omega * m * sn * cn, period


def _invert_monotone(g, phi0, taus, phi_max=math.inf, step=0.25, tol=DEFAULT_TOL):
    """
    Solve integral_{phi0}^{phi} g = tau for each ascending tau, with g > 0 on
    [phi0, phi_max). Brackets are grown by doubling (or halving the gap to a
    finite phi_max) and refined by brentq.
    """
    phis = np.empty(len(taus))
    lo, t_lo = phi0, 0.0
    for i, tau in enumerate(taus):
        if tau <= t_lo:
            phis[i] = lo
            continue
        width = step
        for _ in range(400):
            if math.isinf(phi_max):
                hi = lo + width
            else:
                hi = lo + min(width, 0.5 * (phi_max - lo))
            t_hi = t_lo + integrate_interval(g, lo, hi, tol)
            if t_hi >= tau:
                break
            lo, t_lo = hi, t_hi
            width *= 2.0
        else:
            raise QuadratureFailure(f"could not bracket t={tau:g}")

        base_phi, base_t = lo, t_lo

        def residual(phi):
            return base_t + integrate_interval(g, base_phi, phi, tol) - tau

        root = brentq(residual, lo, hi, xtol=BRACKET_TOL)
        phis[i] = root
        lo, t_lo = root, tau
    return phis


def _orbit_interval(energy, u0):
    roots = energy.real_roots()
    tol = 1e-12 * max(1.0, abs(u0))
    at = [r for r in roots if abs(r[0] - u0) <= tol]
    below = [r for r in roots if r[0] < u0 - tol]
    above = [r for r in roots if r[0] > u0 + tol]
    lo = below[-1] if below else None
    hi = above[0] if above else None
    if at:
        if energy.dF(u0) > 0:
            lo = (u0, at[0][1])
        else:
            hi = (u0, at[0][1])
    return lo, hi


def _check_escape(g, phi0, span, tol):
    t_escape = integrate_interval(g, phi0, math.inf, tol)
    if span >= t_escape:
        raise UnboundedOrbit(f"orbit escapes to infinity after t={t_escape:.6g}")
    return t_escape


def _quadrature_solution(energy, u0, up, tau, tol):
    lo, hi = _orbit_interval(energy, u0)
    coeffs = energy.coefficients()
    span = float(tau[-1])

    if lo is not None and hi is not None and not lo[1] and not hi[1]:
        # bounded between simple turning points: u = mid + h sin(theta)
        mid, h = 0.5 * (lo[0] + hi[0]), 0.5 * (hi[0] - lo[0])
        quotient, _ = np.polydiv(coeffs, [-1.0, lo[0] + hi[0], -lo[0] * hi[0]])

        def G(u):
            return max(np.polyval(quotient, u), 1e-300)

        def g(theta):
            return 1.0 / math.sqrt(G(mid + h * math.sin(theta)))

        theta0 = math.asin(max(-1.0, min(1.0, (u0 - mid) / h)))
        if up < 0:
            theta0 = math.pi - theta0
        period = integrate_interval(g, 0.0, 2.0 * math.pi, tol)
        theta = _invert_monotone(g, theta0, tau, tol=tol)
        u = mid + h * np.sin(theta)
        up_out = h * np.cos(theta) * np.sqrt([G(v) for v in u])
        return "periodic", u, up_out, period

    simple = [e for e in (lo, hi) if e is not None and not e[1]]
    if simple:
        # one simple turning point a: u = a + sigma rho^2
        a = simple[0][0]
        sigma = 1.0 if simple[0] is lo else -1.0
        other = hi if sigma > 0 else lo
        quotient, _ = np.polydiv(sigma * coeffs, [1.0, -a])

        def P1(u):
            return max(np.polyval(quotient, u), 1e-300)

        def g(rho):
            return 2.0 / math.sqrt(P1(a + sigma * rho * rho))

        rho0 = math.sqrt(max(0.0, sigma * (u0 - a)))
        if sigma * up < 0:
            rho0 = -rho0
        if other is None:
            rho_max = math.inf
            _check_escape(g, rho0, span, tol)
        else:
            rho_max = math.sqrt(sigma * (other[0] - a))
        rho = _invert_monotone(g, rho0, tau, phi_max=rho_max, tol=tol)
        u = a + sigma * rho * rho
        up_out = sigma * rho * np.sqrt([P1(v) for v in u])
        return "half-open", u, up_out, None

    # no turning point ahead: u is monotone in the direction of u'
    d = 1.0 if up > 0 else -1.0
    limit = hi if d > 0 else lo

    def g(phi):
        return 1.0 / math.sqrt(max(energy.F(d * phi), 1e-300))

    phi0 = d * u0
    if limit is None:
        phi_max = math.inf
        _check_escape(g, phi0, span, tol)
    else:
        phi_max = d * limit[0]
    phi = _invert_monotone(g, phi0, tau, phi_max=phi_max, tol=tol)
    u = d * phi
    up_out = d * np.sqrt(np.maximum(energy.F(u), 0.0))
    return "open", u, up_out, None


def solve_reduced(r, init, grid, method="auto", tol=DEFAULT_TOL):
    """
    Solve a reduced equation at c = 0 on a grid.

    Args:
        r: ReducedEquation with c == 0
        init: (u, u') at grid[0]
        grid: Ascending sample times
        method: "auto" (sn/cn/dn where the orbit is bounded) or "quadrature"
        tol: Quadrature tolerance

    Returns:
        ReducedSolution

    Raises:
        Unsupported: If r.c != 0
        UnboundedOrbit: If the orbit escapes before the end of the grid
    """
    if method not in ("auto", "quadrature"):
        raise DomainError(f"method must be 'auto' or 'quadrature', got {method!r}")
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or len(t) == 0:
        raise DomainError("grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t) < 0):
        raise DomainError("grid must be ascending")
    u0, up0 = float(init[0]), float(init[1])
    energy = energy_from_state(r, u0, up0)
    tau = t - t[0]

    if _is_equilibrium(energy, u0, up0):
        return ReducedSolution(t, np.full_like(t, u0), np.zeros_like(t), energy, "equilibrium")

    solved = _jacobi_solution(energy, u0, up0, tau) if method == "auto" else None
    if solved is None:
        solved = _quadrature_solution(energy, u0, up0, tau, tol)
    kind, u, up, period = solved
    logger.debug("%s solved as %s orbit, E=%.6g", r.which.value, kind, energy.E)
    return ReducedSolution(t, np.asarray(u, dtype=float), np.asarray(up, dtype=float), energy, kind, period)


def reduced_energy_drift(r, solution):
    """Largest |u'^2 - Q(u) - E| over the samples of a solution."""
    energy = solution.energy
    return float(np.max(np.abs(solution.up**2 - energy.potential(solution.u) - energy.E)))


def reduced_acceleration_residual(r, solution):
    """Largest |u'' - f(u)| with u'' from central differences of u' (uniform grids)."""
    t, up = solution.t, solution.up
    if len(t) < 3:
        raise DomainError("need at least three samples")
    h = t[1] - t[0]
    upp = (up[2:] - up[:-2]) / (2.0 * h)
    return float(np.max(np.abs(upp - reduced_rhs(r, (solution.u[1:-1], up[1:-1])))))
