"""Brute-force reference implementations used to validate the fast paths.

None of these routines is called by the production evaluators.  Each one
follows a different algorithm from the code it checks:

* annulus kernel from the orthonormal Laurent basis instead of Weierstrass
  functions,
* rectangle kernel from Gram-Schmidt orthonormalized polynomials under
  tensor Gauss-Legendre quadrature instead of Jacobi functions,
* complete elliptic integrals by adaptive quadrature instead of the AGM,
* Weierstrass functions by direct lattice sums instead of nome series.

Every oracle reports an error bound and refuses to answer (raising
:class:`ConvergenceError`) when the bound exceeds the configured tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError, PoleError
from .special import POLE_RADIUS, Lattice

__all__ = [
    "OracleConfig",
    "laurent_annulus_kernel",
    "gram_schmidt_kernel",
    "gram_schmidt_disc_kernel",
    "quadrature_K",
    "quadrature_E",
    "lattice_p",
    "lattice_zeta",
]


@dataclass(frozen=True)
class OracleConfig:
    """Truncation, quadrature order and relative tolerance.

    ``None`` fields fall back to per-oracle defaults: automatic truncation
    with tolerance ``1e-12`` for the Laurent series, box half-width 40 with
    tolerance ``1e-9`` for lattice sums.
    """

    truncation: Optional[int] = None
    quad_order: Optional[int] = None
    tolerance: Optional[float] = None

    def __post_init__(self):
        if self.truncation is not None and self.truncation < 1:
            raise ValueError("truncation must be positive")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def tol(self, default: float) -> float:
        return default if self.tolerance is None else self.tolerance


DEFAULT_CONFIG = OracleConfig()


# ---------------------------------------------------------------------------
# annulus


def laurent_annulus_kernel(r: float, z: complex, cfg: OracleConfig = DEFAULT_CONFIG,
                           return_bound: bool = False):
    """Kernel of ``{r < |z| < 1}`` from the orthonormal monomials ``z^n``.

    ``sum_{n != -1} (n+1)|z|^{2n} / (pi (1 - r^{2n+2})) + |z|^{-2} / (2 pi log(1/r))``.
    With ``x = |z|^2`` and ``y = r^2/x`` the positive and negative tails are
    bounded by ``(N+2) x^{N+1} / (pi (1-r^2)(1-x)^2)`` and
    ``N y^{N+1} / (pi r^2 (1-r^2)(1-y)^2)``.
    """
    r = float(r)
    z = complex(z)
    if not (0.0 < r < 1.0):
        raise DomainError("inner radius must lie in (0, 1)")
    rho = abs(z)
    if not (r < rho < 1.0):
        raise DomainError("z must lie in the annulus")
    x = rho * rho
    y = r * r / x
    log_term = 1.0 / (2.0 * math.pi * math.log(1.0 / r) * x)
    max_n = cfg.truncation if cfg.truncation is not None else 200000

    def tail(N):
        tp = (N + 2) * x ** (N + 1) / (math.pi * (1.0 - r * r) * (1.0 - x) ** 2)
        tn = N * y ** (N + 1) / (math.pi * r * r * (1.0 - r * r) * (1.0 - y) ** 2)
        return tp + tn

    # crude lower bound on the kernel for the relative test
    lower = 1.0 / math.pi  # the n = 0 term alone exceeds this
    N = 8
    tol = cfg.tol(1e-12)
    while tail(N) > tol * lower and N < max_n:
        N = min(2 * N, max_n)
    bound = tail(N)
    n = np.arange(0, N + 1, dtype=float)
    pos = (n + 1.0) * x ** n / (math.pi * (-np.expm1((2.0 * n + 2.0) * math.log(r))))
    m = np.arange(2, N + 1, dtype=float)
    # n = -m: (1 - m) x^{-m} / (pi (1 - r^{2 - 2m})) written with y = r^2/x
    neg = (m - 1.0) * y ** m / (math.pi * r * r * (-np.expm1((2.0 * m - 2.0) * math.log(r))))
    val = math.fsum(np.concatenate([pos[::-1], neg[::-1], [log_term]]))
    if bound > tol * val:
        raise ConvergenceError(
            f"Laurent tail bound {bound:.3g} exceeds tolerance at |z|={rho}")
    return (val, bound) if return_bound else val


# ---------------------------------------------------------------------------
# Gram-Schmidt kernels


def _gs_kernel(nodes: np.ndarray, weights: np.ndarray, z: complex, degree: int,
               center: complex, scale: float) -> np.ndarray:
    """Partial sums ``sum_{j<=n} |phi_j(z)|^2`` for ``n = 0..degree``.

    Monomials in ``(w - center)/scale`` are orthonormalized by modified
    Gram-Schmidt in the discrete inner product; the value at ``z`` rides
    along as an extra row that takes no part in inner products.
    """
    t = (nodes - center) / scale
    tz = (complex(z) - center) / scale
    P = len(t)
    A = np.empty((P + 1, degree + 1), dtype=complex)
    A[:P, 0] = 1.0
    A[P, 0] = 1.0
    for j in range(1, degree + 1):
        A[:P, j] = A[:P, j - 1] * t
        A[P, j] = A[P, j - 1] * tz
    sw = np.sqrt(weights)
    A[:P, :] *= sw[:, None]
    Q = np.empty_like(A)
    for j in range(degree + 1):
        v = A[:, j].copy()
        n0 = np.linalg.norm(v[:P])
        for _ in range(2):  # twice is enough
            for i in range(j):
                c = np.vdot(Q[:P, i], v[:P])
                v -= c * Q[:, i]
        nv = np.linalg.norm(v[:P])
        if nv < 1e-8 * n0:
            raise ConvergenceError(
                f"Gram-Schmidt lost more than 8 digits at degree {j}")
        Q[:, j] = v / nv
    vals = np.abs(Q[P, :]) ** 2
    # weights carry the area element of the original variable, so the
    # phi_j are already orthonormal there
    return np.cumsum(vals)


def gram_schmidt_kernel(zeta: complex, z: complex, degree: int = 40,
                        quad_order: Optional[int] = None, partial_sums: bool = False):
    """Bergman kernel of the rectangle ``[0, Re zeta] x [0, Im zeta]`` at ``z``.

    Parameters
    ----------
    zeta, z : complex
    degree : int
        Highest monomial degree ``D`` (at most 60).
    quad_order : int, optional
        Gauss-Legendre nodes per axis; at least ``2D + 2`` so the discrete
        inner product is exact on the polynomial space.
    partial_sums : bool
        Return the nondecreasing array of partial sums instead of the value.
    """
    zeta, z = complex(zeta), complex(z)
    X, Y = zeta.real, zeta.imag
    if not (X > 0 and Y > 0):
        raise DomainError("rectangle needs Re zeta > 0 and Im zeta > 0")
    if not (0 < z.real < X and 0 < z.imag < Y):
        raise DomainError("z must lie inside the rectangle")
    if not (0 <= degree <= 60):
        raise DomainError("degree must lie in 0..60")
    q = quad_order if quad_order is not None else 2 * degree + 2
    if q < 2 * degree + 2:
        raise DomainError("quadrature order must be at least 2*degree + 2")
    g, w = np.polynomial.legendre.leggauss(q)
    xs = 0.5 * X * (g + 1.0)
    ys = 0.5 * Y * (g + 1.0)
    wx = 0.5 * X * w
    wy = 0.5 * Y * w
    nodes = (xs[:, None] + 1j * ys[None, :]).ravel()
    weights = (wx[:, None] * wy[None, :]).ravel()
    center = complex(0.5 * X, 0.5 * Y)
    scale = 0.5 * abs(zeta)
    ps = _gs_kernel(nodes, weights, z, degree, center, scale)
    return ps if partial_sums else float(ps[-1])


def gram_schmidt_disc_kernel(z: complex, degree: int = 40, quad_order: Optional[int] = None,
                             partial_sums: bool = False):
    """Control run of the Gram-Schmidt machinery on the unit disc.

    Gauss-Legendre in the radius and the trapezoidal rule in the angle,
    which together integrate ``|p|^2`` exactly for polynomials of degree
    ``D``.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("z must lie in the unit disc")
    q = quad_order if quad_order is not None else 2 * degree + 2
    g, w = np.polynomial.legendre.leggauss(q)
    rs = 0.5 * (g + 1.0)
    wr = 0.5 * w * rs
    na = 2 * degree + 2
    th = 2.0 * math.pi * np.arange(na) / na
    nodes = (rs[:, None] * np.exp(1j * th)[None, :]).ravel()
    weights = (wr[:, None] * np.full(na, 2.0 * math.pi / na)[None, :]).ravel()
    ps = _gs_kernel(nodes, weights, z, degree, 0j, 1.0)
    return ps if partial_sums else float(ps[-1])


# ---------------------------------------------------------------------------
# elliptic integrals


def _quad_phi(f, tol: float = 1e-12) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, 0.0, 0.5 * math.pi, epsabs=1e-14, epsrel=1e-14, limit=500)
    if err > tol:
        raise ConvergenceError(f"quadrature error estimate {err:.3g} exceeds {tol:.3g}")
    return float(val)


def quadrature_K(k: float) -> float:
    """``K(k) = int_0^{pi/2} dphi / sqrt(1 - k^2 sin^2 phi)`` for ``0 <= k < 1``."""
    k = float(k)
    if not (0.0 <= k < 1.0):
        raise DomainError("quadrature_K needs 0 <= k < 1")
    k2 = k * k
    return _quad_phi(lambda p: 1.0 / math.sqrt(1.0 - k2 * math.sin(p) ** 2))


def quadrature_E(k: float) -> float:
    """``E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 phi) dphi`` for ``0 <= k <= 1``."""
    k = float(k)
    if not (0.0 <= k <= 1.0):
        raise DomainError("quadrature_E needs 0 <= k <= 1")
    k2 = k * k
    return _quad_phi(lambda p: math.sqrt(max(0.0, 1.0 - k2 * math.sin(p) ** 2)))


# ---------------------------------------------------------------------------
# lattice sums


def _box_sum(u: complex, w1: float, w2: complex, N: int, which: str) -> complex:
    m = np.arange(-N, N + 1)
    M, Nn = np.meshgrid(m, m, indexing="ij")
    om = (2.0 * w1 * M + 2.0 * w2 * Nn).ravel()
    om = om[om != 0]
    d = u - om
    if which == "p":
        terms = 1.0 / (d * d) - 1.0 / (om * om)
        lead = 1.0 / (u * u)
    else:
        terms = 1.0 / d + 1.0 / om + u / (om * om)
        lead = 1.0 / u
    # sum small terms first
    order = np.argsort(-np.abs(om))
    return lead + complex(np.sum(terms[order]))


def _lattice(u: complex, L: Lattice, cfg: OracleConfig, which: str) -> Tuple[complex, float]:
    u = complex(u)
    w1, w2 = L.omega1, complex(L.omega2)
    # pole check against the nearest lattice point
    m = round(u.real / (2 * w1))
    n = round(u.imag / (2 * w2.imag))
    if abs(u - 2 * m * w1 - 2 * n * w2) < POLE_RADIUS:
        raise PoleError("u is within the pole radius of a lattice point")
    N = cfg.truncation if cfg.truncation is not None else 40
    s1 = _box_sum(u, w1, w2, N, which)
    s2 = _box_sum(u, w1, w2, 2 * N, which)
    s3 = _box_sum(u, w1, w2, 4 * N, which)
    # tails of symmetric box sums decay like N^-2, then N^-4
    r1 = (4.0 * s2 - s1) / 3.0
    r2 = (4.0 * s3 - s2) / 3.0
    val = (16.0 * r2 - r1) / 15.0
    err = abs(r2 - r1) / 15.0 + 1e-15 * abs(val)
    if err > cfg.tol(1e-9) * max(abs(val), 1.0):
        raise ConvergenceError(f"lattice sum error estimate {err:.3g} exceeds tolerance")
    return val, err


def lattice_p(u: complex, L: Lattice, cfg: OracleConfig = DEFAULT_CONFIG,
              return_error: bool = False):
    """``P(u) = 1/u^2 + sum' (1/(u-w)^2 - 1/w^2)`` by Richardson-accelerated box sums."""
    val, err = _lattice(u, L, cfg, "p")
    return (val, err) if return_error else val


def lattice_zeta(u: complex, L: Lattice, cfg: OracleConfig = DEFAULT_CONFIG,
                 return_error: bool = False):
    """``zeta(u) = 1/u + sum' (1/(u-w) + 1/w + u/w^2)`` by Richardson-accelerated box sums."""
    val, err = _lattice(u, L, cfg, "zeta")
    return (val, err) if return_error else val
