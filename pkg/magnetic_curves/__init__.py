"""
Killing Magnetic Curves - Lorentzian-Heisenberg Package
=======================================================

Integration, closed-form evaluation and verification of Killing magnetic
curves in the non-flat Lorentzian-Heisenberg spaces (H3, g1) and (H3, g2).

This package provides tools for:
    - Orthonormal frames, metric tensors, connection tables and Killing fields
    - Casting the Lorentz equation as a first-order ODE and integrating it
    - Evaluating the analytic solution families, as printed and as derived
    - Solving the reduced quartic equations with Jacobi elliptic functions
    - Residual and conservation checks for any sampled or analytic curve
"""

__version__ = "0.1.0"
