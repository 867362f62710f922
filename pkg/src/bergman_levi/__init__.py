"""Bergman kernels of planar domain families and the Levi form of ``log K``.

Five families ``D_zeta`` are covered: annuli, discs moving with a harmonic
``theta``, slit discs, rectangles and half strips.  For each one the kernel on
the diagonal, ``K_zeta(z)``, is evaluated from closed forms in elliptic
functions, and the Levi form ``d^2 log K / d zeta d zeta-bar`` is computed by
finite differences (with closed forms where they exist).  Boundary behaviour
is probed numerically along paths towards the boundary.

Submodules
----------
special    complete/incomplete elliptic integrals, Jacobi and Weierstrass functions
families   domain families, membership tests, kernel evaluators
levi       finite-difference and closed-form Levi forms, boundary probes
theorems   claim tables for the boundary theorems
oracles    independent reference implementations used by tests and ``selftest``
cli        the ``bkl`` command
"""

__version__ = "0.1.0"

from .errors import (
    BergmanLeviError,
    BoundaryGuardError,
    BranchCutError,
    ConvergenceError,
    DomainError,
    InsufficientPointsError,
    ParameterError,
    PoleError,
    StencilError,
)
from .special import (
    Lattice,
    Modulus,
    complete_E,
    complete_K,
    incomplete_F,
    jacobi,
    weierstrass_eta,
    weierstrass_p,
    weierstrass_zeta,
)
from .families import (
    Family,
    FamilyPoint,
    ThetaSpec,
    bergman_annulus,
    bergman_disc_family,
    bergman_halfstrip,
    bergman_kernel,
    bergman_rectangle,
    bergman_slit,
    contains,
    solve_modulus,
    zeta_admissible,
)
from .levi import (
    ApproachPath,
    LeviEstimate,
    LimitReport,
    geometric_path,
    levi_annulus_analytic,
    levi_annulus_exact,
    levi_disc,
    levi_fd,
    probe_limit,
)
from .theorems import ClaimRow, ProbeSettings, reproduce_theorem

__all__ = [
    "__version__",
    "BergmanLeviError", "BoundaryGuardError", "BranchCutError", "ConvergenceError",
    "DomainError", "InsufficientPointsError", "ParameterError", "PoleError",
    "StencilError",
    "Lattice", "Modulus", "complete_E", "complete_K", "incomplete_F", "jacobi",
    "weierstrass_eta", "weierstrass_p", "weierstrass_zeta",
    "Family", "FamilyPoint", "ThetaSpec", "bergman_annulus", "bergman_disc_family",
    "bergman_halfstrip", "bergman_kernel", "bergman_rectangle", "bergman_slit",
    "contains", "solve_modulus", "zeta_admissible",
    "ApproachPath", "LeviEstimate", "LimitReport", "geometric_path",
    "levi_annulus_analytic", "levi_annulus_exact", "levi_disc", "levi_fd",
    "probe_limit",
    "ClaimRow", "ProbeSettings", "reproduce_theorem",
]
