"""Levi form of ``log K_{D_zeta}(z, z)`` in the parameter ``zeta``.

The finite-difference estimate uses ``d^2/dzeta dzetabar = Laplacian / 4``
on a five-point stencil in the ``zeta`` plane, refined by one Richardson
step.  Closed forms are provided where they exist, and :func:`probe_limit`
follows a sequence of points towards the boundary and fits the limit and
the decay or growth order.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from . import special
from .errors import (
    BoundaryGuardError,
    DomainError,
    InsufficientPointsError,
    PoleError,
    StencilError,
)
from .families import (
    DEFAULT_THETA,
    DELTA,
    Family,
    ThetaSpec,
    _annulus_g,
    _require,
    boundary_distance,
    log_kernel_parts,
    parameter_margin,
    zeta_admissible,
)

__all__ = [
    "LeviEstimate",
    "ApproachPath",
    "LimitReport",
    "H_DEFAULT",
    "levi_fd",
    "levi_annulus_analytic",
    "levi_annulus_exact",
    "levi_disc",
    "levi_disc_limit",
    "levi_slit_limit",
    "levi_slit_boundary",
    "levi_slit_limit_derived",
    "probe_limit",
    "geometric_path",
]

H_DEFAULT = 1e-3
STEP_FRACTION = 0.1


@dataclass(frozen=True)
class LeviEstimate:
    """A Levi-form value with the step that produced it.

    ``richardson_error`` is ``|est(h) - est(h/2)| / 3`` for finite
    differences and 0 for closed forms.
    """

    value: float
    h: float
    richardson_error: float
    method: str = "FD"

    def __post_init__(self):
        if self.method not in ("FD", "Analytic"):
            raise ValueError("method must be 'FD' or 'Analytic'")
        if not self.richardson_error >= 0.0:
            raise ValueError("richardson_error must be non-negative")


@dataclass(frozen=True)
class ApproachPath:
    """Points ``(zeta_j, z_j)`` marching towards a boundary point.

    ``distances`` holds the small variable the decay or growth order is
    measured against (for instance ``1 - |z|`` or an angle).
    """

    family: Family
    zeta_path: Sequence[complex]
    z_path: Sequence[complex]
    distances: Sequence[float]
    description: str = ""
    theta: ThetaSpec = DEFAULT_THETA

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        zp = tuple(complex(v) for v in self.zeta_path)
        xp = tuple(complex(v) for v in self.z_path)
        ds = tuple(float(v) for v in self.distances)
        if not (len(zp) == len(xp) == len(ds)):
            raise ValueError("zeta_path, z_path and distances must have equal length")
        object.__setattr__(self, "zeta_path", zp)
        object.__setattr__(self, "z_path", xp)
        object.__setattr__(self, "distances", ds)

    def __len__(self):
        return len(self.z_path)


@dataclass(frozen=True)
class LimitReport:
    estimates: List[LeviEstimate]
    distances: List[float]
    fitted_limit: float
    diverged: bool
    fitted_order: float
    slope_stderr: float
    limit_error: float = 0.0
    description: str = ""
    skipped: List[int] = field(default_factory=list)

    @property
    def values(self) -> List[float]:
        return [e.value for e in self.estimates]


# ---------------------------------------------------------------------------
# finite differences


def _stencil(zeta: complex, h: float):
    return (zeta + h, zeta - h, zeta + 1j * h, zeta - 1j * h)


def _check_stencil(fam, zeta, z, theta, h, delta):
    for zp in (zeta,) + _stencil(zeta, h):
        if not zeta_admissible(fam, zp, delta):
            raise StencilError(f"stencil point zeta={zp!r} is not admissible (h={h})")
        if boundary_distance(fam, zp, z, theta) <= 0.0:
            raise StencilError(f"z={z!r} leaves the domain at stencil point zeta={zp!r}")


def auto_step(family, zeta: complex, z: complex, theta: ThetaSpec = DEFAULT_THETA,
              h_max: float = H_DEFAULT, delta: float | None = DELTA) -> float:
    """Largest step ``<= h_max`` keeping the stencil well inside the admissible set."""
    m = parameter_margin(family, zeta, z, theta, delta)
    if not m > 0.0:
        raise StencilError("no admissible stencil: zeta or z is on the boundary")
    return min(h_max, STEP_FRACTION * m)


def levi_fd(family, zeta: complex, z: complex, theta: ThetaSpec = DEFAULT_THETA,
            h: Optional[float] = None, delta: float | None = DELTA) -> LeviEstimate:
    """Five-point Laplacian estimate of ``d^2 log K / dzeta dzetabar``.

    Parameters
    ----------
    family : Family or str
    zeta, z : complex
        Parameter and evaluation point.
    theta : ThetaSpec
        Only used by the disc family.
    h : float, optional
        Stencil step.  When omitted it is ``min(1e-3, margin/10)`` where the
        margin measures how far ``zeta`` may move before the stencil leaves
        the admissible set or the moving boundary reaches ``z``.
    delta : float or None
        Radius of the admissible parameter ball; ``None`` disables it.

    Returns
    -------
    LeviEstimate
        Richardson-refined value ``(4 est(h/2) - est(h)) / 3``.

    Raises
    ------
    StencilError
        If an explicit ``h`` moves the stencil outside the admissible set.
    """
    fam = Family.parse(family)
    zeta, z = complex(zeta), complex(z)
    _require(fam, zeta, z, theta)
    if h is None:
        h = auto_step(fam, zeta, z, theta, delta=delta)
    h = float(h)
    if not h > 0.0:
        raise StencilError("step must be positive")
    _check_stencil(fam, zeta, z, theta, h, delta)

    f0 = log_kernel_parts(fam, zeta, z, theta)[1]

    def est(step):
        s = sum(log_kernel_parts(fam, zp, z, theta)[1] for zp in _stencil(zeta, step))
        return (s - 4.0 * f0) / (4.0 * step * step)

    e1 = est(h)
    e2 = est(0.5 * h)
    return LeviEstimate((4.0 * e2 - e1) / 3.0, h, abs(e1 - e2) / 3.0, "FD")


# ---------------------------------------------------------------------------
# closed forms


def levi_annulus_analytic(zeta: complex, z: complex) -> LeviEstimate:
    """Printed closed form for the annulus.

    ``exp(2 w1) (2P(u) - P(w1) + c)(P(w1) + c) / (4 w1^2 (P(u) + c)^2)``
    with ``w1 = -log|zeta|`` and ``u = -2 log|z|``.  This expression only
    matches :func:`levi_annulus_exact` asymptotically as ``|z| -> 1``.
    """
    zeta, z = complex(zeta), complex(z)
    _require(Family.ANNULUS, zeta, z)
    w1 = -math.log(abs(zeta))
    u = -2.0 * math.log(abs(z))
    L = special.Lattice(w1)
    c = special.robin_c(w1)
    pu = special.weierstrass_p(u, L).real
    pw = special.weierstrass_p(w1, L).real
    val = math.exp(2.0 * w1) * (2.0 * pu - pw + c) * (pw + c) / (4.0 * w1 * w1 * (pu + c) ** 2)
    return LeviEstimate(val, 0.0, 0.0, "Analytic")


def _annulus_log_derivs(u: float, a: float):
    # f = log g with g(a) = a^2 (csc^2(a u) - 8 sum n Q_n cos(2 n a u)),
    # Q_n = p^n / (1 - p^n), p = exp(-4 pi a); returns (f_a, f_aa)
    s = math.sin(a * u)
    c = math.cos(a * u)
    csc2 = 1.0 / (s * s)
    cot = c / s
    h = csc2
    h1 = -2.0 * u * csc2 * cot
    h2 = 2.0 * u * u * csc2 * (2.0 * cot * cot + csc2)
    p1 = math.exp(-4.0 * math.pi * a)
    pn = p1
    n = 1
    while True:
        om = 1.0 - pn
        Q = pn / om
        Q1 = -4.0 * n * math.pi * pn / (om * om)
        Q2 = 16.0 * n * n * math.pi ** 2 * pn * (1.0 + pn) / om ** 3
        cs = math.cos(2.0 * n * a * u)
        sn = math.sin(2.0 * n * a * u)
        t0 = n * Q * cs
        t1 = n * (Q1 * cs - 2.0 * n * u * Q * sn)
        t2 = n * (Q2 * cs - 4.0 * n * u * Q1 * sn - 4.0 * n * n * u * u * Q * cs)
        h -= 8.0 * t0
        h1 -= 8.0 * t1
        h2 -= 8.0 * t2
        bound = n * n * (abs(Q2) + abs(Q1) * u + Q * u * u) * (1.0 + n * u)
        if n > 1 and bound < 1e-17 * (abs(h2) + abs(h1) + abs(h)):
            break
        n += 1
        pn *= p1
        if n > 5000:
            raise DomainError("annulus derivative series did not converge")
    fa = 2.0 / a + h1 / h
    faa = -2.0 / (a * a) + h2 / h - (h1 / h) ** 2
    return fa, faa


def levi_annulus_exact(zeta: complex, z: complex) -> LeviEstimate:
    """Levi form of the annulus kernel from analytic derivatives of the nome series.

    With ``w1 = -log|zeta|`` and ``f(w1) = log(P(u) + c(w1))`` at fixed
    ``u``, the Levi form is ``exp(2 w1) f''(w1) / 4``; ``f''`` is obtained
    through ``a = pi/(2 w1)`` by differentiating the series term by term.
    """
    zeta, z = complex(zeta), complex(z)
    _require(Family.ANNULUS, zeta, z)
    w1 = -math.log(abs(zeta))
    u = -2.0 * math.log(abs(z))
    if u < special.POLE_RADIUS or 2.0 * w1 - u < special.POLE_RADIUS:
        raise PoleError("evaluation point within the pole radius of a boundary circle")
    _annulus_g(u, w1)  # raises on the same conditions as the kernel
    a = math.pi / (2.0 * w1)
    fa, faa = _annulus_log_derivs(u, a)
    da = 2.0 * a * a / math.pi
    d2a = 8.0 * a ** 3 / math.pi ** 2
    fww = faa * da * da + fa * d2a
    return LeviEstimate(math.exp(2.0 * w1) * fww / 4.0, 0.0, 0.0, "Analytic")


def levi_disc(zeta: complex, z: complex, theta: ThetaSpec = DEFAULT_THETA) -> LeviEstimate:
    """Closed form for the disc family at a general parameter.

    ``4|theta_zeta|^2 |z|^2 (Re(z e^{-i theta}) + 2) / (|z|^2 + 2 Re(z e^{-i theta}))^2``.
    """
    zeta, z = complex(zeta), complex(z)
    _require(Family.DISC, zeta, z, theta)
    th = theta.value(zeta)
    tz = theta.d_zeta(zeta)
    x = (z * cmath.exp(-1j * th)).real
    r2 = abs(z) ** 2
    val = 4.0 * abs(tz) ** 2 * r2 * (x + 2.0) / (r2 + 2.0 * x) ** 2
    return LeviEstimate(val, 0.0, 0.0, "Analytic")


def levi_disc_limit(z: complex, theta: ThetaSpec = DEFAULT_THETA) -> float:
    """``zeta -> 0`` limit ``4|theta_zeta(0)|^2 |z|^2 (Re z + 2) / (1 - |z + 1|^2)^2``."""
    z = complex(z)
    d = 1.0 - abs(z + 1.0)
    if d <= 0.0:
        raise DomainError("z must lie in the disc |z + 1| < 1")
    if d < 1e-10:
        raise BoundaryGuardError("z is within 1e-10 of the boundary circle")
    tz = theta.d_zeta(0j)
    return 4.0 * abs(tz) ** 2 * abs(z) ** 2 * (z.real + 2.0) / (1.0 - abs(z + 1.0) ** 2) ** 2


def levi_slit_limit(r: float, theta_polar: float) -> float:
    """Printed inner limit ``(1/4)(1 + r^2 cos 2t) / (1 + r^2 - 2 r cos t)``."""
    r, t = float(r), float(theta_polar)
    den = 1.0 + r * r - 2.0 * r * math.cos(t)
    if den <= 0.0:
        raise DomainError("z = 1 is not in the limit domain")
    return 0.25 * (1.0 + r * r * math.cos(2.0 * t)) / den


def levi_slit_boundary(theta_polar: float) -> float:
    """Printed boundary profile ``(1/4)((1 - cos t) + 1/(1 - cos t) - 2)``."""
    t = float(theta_polar)
    c = 1.0 - math.cos(t)
    if c == 0.0:
        raise DomainError("the boundary profile is singular at angle 0")
    return 0.25 * (c + 1.0 / c - 2.0)


def levi_slit_limit_derived(z: complex) -> float:
    """Inner limit of the slit-disc Levi form obtained by differentiating the map.

    ``|z|^2 / (2|1 - z|^2) + (1/4) Re((1 + 2z - z^2)/(1 - z)^2)``, which is
    what finite differences at a very short slit converge to.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("z must lie in the unit disc")
    if z == 1.0:
        raise DomainError("z = 1 is not in the limit domain")
    one = 1.0 - z
    return abs(z) ** 2 / (2.0 * abs(one) ** 2) + 0.25 * ((1.0 + 2.0 * z - z * z) / (one * one)).real


# ---------------------------------------------------------------------------
# boundary probes


def geometric_path(family, zeta: complex, target: complex, direction: complex,
                   start: float = 0.5, ratio: float = 0.5, steps: int = 12,
                   description: str = "", theta: ThetaSpec = DEFAULT_THETA) -> ApproachPath:
    """Path ``z_j = target + s_j * direction`` with ``s_j = start * ratio**j``."""
    direction = complex(direction) / abs(complex(direction))
    ds = [start * ratio ** j for j in range(steps)]
    return ApproachPath(family, [zeta] * steps, [target + s * direction for s in ds], ds,
                        description, theta)


def _fit_limit(v: np.ndarray):
    """Aitken extrapolation on the last contracting triple of ``v``.

    Near the end of a path the finite inner-limit parameter can make the
    sequence drift again; triples whose differences grow are skipped.
    Returns ``(limit, error_estimate)``.
    """
    if len(v) < 3:
        return float(v[-1]), 0.0
    for j in range(len(v) - 1, 1, -1):
        a, b, c = v[j - 2], v[j - 1], v[j]
        d1, d2 = b - a, c - b
        if abs(d2) >= abs(d1):
            continue
        den = d2 - d1
        scale = max(abs(a), abs(b), abs(c), 1e-300)
        if abs(den) <= 1e-12 * scale:
            return float(c), float(abs(d2))
        lim = c - d2 * d2 / den
        return float(lim), float(abs(lim - c))
    return float(v[-1]), float(abs(v[-1] - v[-2]))


def _loglog_slope(x: np.ndarray, y: np.ndarray):
    X = np.log(x)
    Y = np.log(y)
    A = np.vstack([X, np.ones_like(X)]).T
    coef, res, *_ = np.linalg.lstsq(A, Y, rcond=None)
    slope = float(coef[0])
    n = len(X)
    if n > 2:
        resid = Y - A @ coef
        s2 = float(resid @ resid) / (n - 2)
        se = math.sqrt(s2 / float(((X - X.mean()) ** 2).sum()))
    else:
        se = 0.0
    return slope, se


def _is_divergent(d: np.ndarray, v: np.ndarray) -> bool:
    if len(v) < 4 or np.any(v <= 0.0):
        return False
    span = math.log10(d.max() / d.min())
    if span < 3.0:
        return False
    order = np.argsort(-d)
    vs = v[order]
    if np.any(np.diff(vs) <= 0.0):
        return False
    # growth of at least a factor 10 per decade (1% slack on the exponent)
    slope, _ = _loglog_slope(d[order], vs)
    return slope <= -0.99


def probe_limit(path: ApproachPath, h_schedule: Union[None, float, Sequence[float]] = None,
                evaluator: Optional[Callable[[complex, complex], LeviEstimate]] = None,
                workers: Optional[int] = None, min_points: int = 4,
                zero_tol: float = 1e-3) -> LimitReport:
    """Evaluate the Levi form along ``path`` and fit its limit and order.

    Parameters
    ----------
    path : ApproachPath
    h_schedule : float or sequence of float, optional
        Base finite-difference step (per point if a sequence).  ``None``
        picks the step automatically.
    evaluator : callable, optional
        ``evaluator(zeta, z) -> LeviEstimate`` replacing :func:`levi_fd`.
    workers : int, optional
        Thread count; the report is assembled in path order regardless.
    min_points : int
        Minimum number of usable points.
    zero_tol : float
        Fitted limits below this magnitude are treated as zero when fitting
        the order, which is then the slope of ``log|value|``.

    Returns
    -------
    LimitReport
        ``fitted_order`` is the log-log slope against ``path.distances`` of
        ``|value - limit|`` (or of ``value`` itself for zero or infinite
        limits); decay gives positive, blow-up negative slopes.
    """
    n = len(path)
    if isinstance(h_schedule, (list, tuple)):
        hs = [float(x) for x in h_schedule]
        if len(hs) != n:
            raise ValueError("h_schedule must match the path length")
    else:
        hs = [h_schedule] * n

    def one(j):
        zeta, z = path.zeta_path[j], path.z_path[j]
        try:
            if evaluator is not None:
                return evaluator(zeta, z)
            h = hs[j]
            if h is not None:
                h = min(h, auto_step(path.family, zeta, z, path.theta, h_max=h))
            return levi_fd(path.family, zeta, z, path.theta, h=h)
        except (ArithmeticError, ValueError):
            return None

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, range(n)))
    else:
        results = [one(j) for j in range(n)]

    ests, dist, skipped = [], [], []
    for j, r in enumerate(results):
        if r is None or not math.isfinite(r.value):
            skipped.append(j)
            continue
        ests.append(r)
        dist.append(path.distances[j])
    if len(ests) < min_points:
        raise InsufficientPointsError(
            f"only {len(ests)} usable points along '{path.description}'")

    d = np.array(dist)
    v = np.array([e.value for e in ests])
    diverged = _is_divergent(d, v)
    if diverged:
        slope, se = _loglog_slope(d, v)
        return LimitReport(ests, dist, math.inf, True, slope, se, math.inf,
                           path.description, skipped)
    lim, lerr = _fit_limit(v)
    if abs(lim) < zero_tol:
        y = np.abs(v)
    else:
        y = np.abs(v - lim)
    mask = y > 0.0
    if mask.sum() >= 2:
        slope, se = _loglog_slope(d[mask], y[mask])
    else:
        slope, se = math.nan, math.nan
    return LimitReport(ests, dist, lim, False, slope, se, lerr, path.description, skipped)
