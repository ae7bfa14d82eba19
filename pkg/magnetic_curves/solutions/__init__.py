"""
Analytic and semi-analytic solutions: closed-form families, height
reconstruction, reduced equations and their elliptic solutions.
"""

from magnetic_curves.solutions.closedform import (
    FAMILIES,
    ClosedFormCurve,
    FamilyId,
    FamilySpec,
    Variant,
    eval_family,
)
from magnetic_curves.solutions.quadrature import z_by_quadrature, z_on_grid
from magnetic_curves.solutions.reduced import (
    ReducedEquation,
    ReducedId,
    lift_reduced,
    reduced_rhs,
)
from magnetic_curves.solutions.elliptic import (
    QuarticEnergy,
    ReducedSolution,
    complete_K,
    energy_from_state,
    jacobi,
    solve_reduced,
)
