"""The five parametrized domain families and their diagonal Bergman kernels.

Every family is a map ``zeta -> D_zeta`` of planar domains:

``annulus``
    ``A_zeta = {|zeta| < |z| < 1}`` for ``0 < |zeta| < 1``.
``disc``
    ``C_zeta = {|z + exp(i theta(zeta))| < 1}`` with ``theta`` a harmonic
    polynomial vanishing at 0 (:class:`ThetaSpec`).
``slit``
    ``D_zeta`` = unit disc minus the radial segment ``{s zeta : s >= 1}``.
``rectangle``
    ``R_zeta = {0 < Re z < Re zeta, 0 < Im z < Im zeta}``.
``halfstrip``
    ``S_zeta = {0 < Re z < Re zeta, Im z > 0}``.

Kernels are returned as positive floats.  For the Levi-form machinery each
family also exposes :func:`log_kernel_parts`, which splits ``log K`` into a
part that does not depend on ``zeta`` and a remainder; the remainder is what
finite differences in ``zeta`` act on.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Tuple

from . import special
from .errors import (
    BoundaryGuardError,
    BranchCutError,
    ConvergenceError,
    DomainError,
    ParameterError,
    PoleError,
)
from .special import Modulus

__all__ = [
    "Family",
    "ThetaSpec",
    "DEFAULT_THETA",
    "FamilyPoint",
    "SlitParams",
    "RectangleModulus",
    "DELTA",
    "SLIT_TOL",
    "BOUNDARY_GUARD",
    "zeta_admissible",
    "contains",
    "boundary_distance",
    "parameter_margin",
    "koebe",
    "koebe_prime",
    "koebe_inv",
    "slit_params",
    "slit_map_inv",
    "solve_modulus",
    "modulus_series",
    "series_coefficients",
    "bergman_annulus",
    "bergman_disc_family",
    "bergman_slit",
    "bergman_rectangle",
    "bergman_halfstrip",
    "bergman_kernel",
    "log_kernel_parts",
    "transform_kernel",
    "disc_kernel",
    "halfplane_kernel",
]

DELTA = 0.5             # radius of the admissible parameter balls
SLIT_TOL = 1e-12        # distance to the slit ray counted as "on the slit"
BOUNDARY_GUARD = 1e-10  # kernel evaluators refuse closer approaches

_SQRT2 = math.sqrt(2.0)


class Family(str, enum.Enum):
    ANNULUS = "annulus"
    DISC = "disc"
    SLIT = "slit"
    RECTANGLE = "rectangle"
    HALFSTRIP = "halfstrip"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, Family):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ParameterError(f"unknown family {name!r}") from None


@dataclass(frozen=True)
class ThetaSpec:
    """Harmonic polynomial ``theta(zeta) = Re(sum_n a_n zeta**n)``, ``n >= 1``.

    ``coefficients[0]`` is ``a_1``.  There is no constant term, so
    ``theta(0) = 0`` holds by construction.  The default ``(1,)`` gives
    ``theta = Re zeta`` with ``theta_zeta = 1/2``.
    """

    coefficients: Tuple[complex, ...] = (1.0 + 0j,)

    def __post_init__(self):
        coeffs = tuple(complex(a) for a in self.coefficients)
        if not coeffs:
            raise ParameterError("ThetaSpec needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    def value(self, zeta: complex) -> float:
        acc = 0j
        for a in reversed(self.coefficients):
            acc = (acc + a) * zeta
        return acc.real

    def d_zeta(self, zeta: complex) -> complex:
        """Wirtinger derivative ``d theta / d zeta = (1/2) sum n a_n zeta**(n-1)``."""
        acc = 0j
        n = len(self.coefficients)
        for j in range(n, 0, -1):
            acc = acc * zeta + j * self.coefficients[j - 1]
        return 0.5 * acc


DEFAULT_THETA = ThetaSpec()


@dataclass(frozen=True)
class FamilyPoint:
    family: Family
    zeta: complex
    z: complex
    theta: ThetaSpec = field(default=DEFAULT_THETA)

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "zeta", complex(self.zeta))
        object.__setattr__(self, "z", complex(self.z))

    def contains(self, delta: float = DELTA) -> bool:
        return contains(self, delta=delta)


@dataclass(frozen=True)
class SlitParams:
    """Slit-length parameter ``t > 0`` and direction ``theta`` in ``[0, 2 pi)``."""

    t: float
    theta: float


@dataclass(frozen=True)
class RectangleModulus:
    """Modulus solving the aspect equation for the rectangle ``R_zeta``."""

    k: Modulus
    K: float
    K_prime: float
    C: float


# ---------------------------------------------------------------------------
# admissibility and membership


def _natural_domain(family: Family, zeta: complex) -> bool:
    # geometric requirement for the formula to make sense at all
    if family is Family.ANNULUS or family is Family.SLIT:
        return 0.0 < abs(zeta) < 1.0
    if family is Family.DISC:
        return abs(zeta) < 1.0
    if family is Family.RECTANGLE:
        return zeta.real > 0.0 and zeta.imag > 0.0
    return zeta.real > 0.0


def zeta_admissible(family, zeta: complex, delta: float | None = DELTA) -> bool:
    """Whether ``zeta`` lies in the admissible parameter set of ``family``.

    ``delta=None`` drops the ball restriction around the limit point and only
    checks that the domain is well defined.
    """
    fam = Family.parse(family)
    zeta = complex(zeta)
    if not (math.isfinite(zeta.real) and math.isfinite(zeta.imag)):
        return False
    if not _natural_domain(fam, zeta):
        return False
    if delta is None:
        return True
    if fam is Family.SLIT or fam is Family.HALFSTRIP:
        return abs(zeta - 1.0) < delta
    if fam is Family.RECTANGLE:
        return abs(zeta - (1 + 1j)) < delta
    return True


def _slit_distance(zeta: complex, z: complex) -> float:
    # distance from z to the ray {s zeta : s >= 1}
    s = (z * zeta.conjugate()).real / abs(zeta) ** 2
    if s <= 1.0:
        return abs(z - zeta)
    return abs(z - s * zeta)


def boundary_distance(family, zeta: complex, z: complex,
                      theta: ThetaSpec = DEFAULT_THETA) -> float:
    """Signed distance from ``z`` to the boundary of ``D_zeta`` (negative outside)."""
    fam = Family.parse(family)
    zeta, z = complex(zeta), complex(z)
    if fam is Family.ANNULUS:
        r = abs(z)
        return min(1.0 - r, r - abs(zeta))
    if fam is Family.DISC:
        return 1.0 - abs(z + cmath.exp(1j * theta.value(zeta)))
    if fam is Family.SLIT:
        d = 1.0 - abs(z)
        return min(d, _slit_distance(zeta, z)) if d > 0 else d
    x, y = z.real, z.imag
    if fam is Family.RECTANGLE:
        return min(x, zeta.real - x, y, zeta.imag - y)
    return min(x, zeta.real - x, y)


def contains(point: FamilyPoint, delta: float | None = DELTA) -> bool:
    """True iff ``point.z`` lies in the open domain ``D_zeta``.

    Raises :class:`ParameterError` when ``point.zeta`` is not admissible.
    Points within ``SLIT_TOL`` of the slit ray count as outside.
    """
    if not zeta_admissible(point.family, point.zeta, delta):
        raise ParameterError(
            f"zeta={point.zeta!r} is not admissible for family {point.family.value}")
    d = boundary_distance(point.family, point.zeta, point.z, point.theta)
    if point.family is Family.SLIT:
        return abs(point.z) < 1.0 and _slit_distance(point.zeta, point.z) >= SLIT_TOL
    return d > 0.0


def parameter_margin(family, zeta: complex, z: complex,
                     theta: ThetaSpec = DEFAULT_THETA,
                     delta: float | None = DELTA) -> float:
    """How far ``zeta`` may move while ``z`` stays in ``D_zeta`` and ``zeta`` stays admissible.

    The value is a conservative lower bound; finite-difference steps are
    chosen as a fraction of it.
    """
    fam = Family.parse(family)
    zeta, z = complex(zeta), complex(z)
    # distance of zeta to the edge of its admissible set
    if fam is Family.ANNULUS:
        zm = min(abs(zeta), 1.0 - abs(zeta))
    elif fam is Family.DISC:
        zm = 1.0 - abs(zeta)
    elif fam is Family.SLIT:
        zm = min(abs(zeta), 1.0 - abs(zeta))
    elif fam is Family.RECTANGLE:
        zm = min(zeta.real, zeta.imag)
    else:
        zm = zeta.real
    if delta is not None:
        if fam is Family.SLIT or fam is Family.HALFSTRIP:
            zm = min(zm, delta - abs(zeta - 1.0))
        elif fam is Family.RECTANGLE:
            zm = min(zm, delta - abs(zeta - (1 + 1j)))
    # how fast the zeta-dependent part of the boundary moves
    if fam is Family.ANNULUS:
        mm = abs(z) - abs(zeta)
    elif fam is Family.DISC:
        speed = 2.0 * abs(theta.d_zeta(zeta))
        # derivative bound over the whole disc |zeta| < 1 is not needed at
        # stencil scale; a factor 2 absorbs the variation of theta_zeta
        d = 1.0 - abs(z + cmath.exp(1j * theta.value(zeta)))
        mm = math.inf if speed == 0.0 else d / (2.0 * speed)
    elif fam is Family.SLIT:
        mm = _slit_distance(zeta, z) * abs(zeta)
    elif fam is Family.RECTANGLE:
        mm = min(zeta.real - z.real, zeta.imag - z.imag)
    else:
        mm = zeta.real - z.real
    return min(zm, mm)


def _require(family: Family, zeta: complex, z: complex, theta: ThetaSpec = DEFAULT_THETA):
    if not zeta_admissible(family, zeta, None):
        raise ParameterError(f"zeta={zeta!r} is not admissible for family {family.value}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    d = boundary_distance(family, zeta, z, theta)
    on_slit = family is Family.SLIT and _slit_distance(zeta, z) < SLIT_TOL
    if d <= 0.0 or on_slit:
        raise DomainError(f"z={z!r} is not in the {family.value} domain for zeta={zeta!r}")
    if d < BOUNDARY_GUARD:
        raise BoundaryGuardError(f"z={z!r} is within {BOUNDARY_GUARD} of the boundary")


# ---------------------------------------------------------------------------
# model kernels and the transformation rule


def disc_kernel(w: complex) -> float:
    """Bergman kernel of the unit disc on the diagonal."""
    return 1.0 / (math.pi * (1.0 - abs(w) ** 2) ** 2)


def halfplane_kernel(w: complex) -> float:
    """Bergman kernel of the upper half plane on the diagonal."""
    return 1.0 / (4.0 * math.pi * complex(w).imag ** 2)


def transform_kernel(base_value: float, f_prime: complex) -> float:
    """``K_Omega(z, z) = K_D(f(z), f(z)) |f'(z)|**2`` for a biholomorphism ``f``."""
    return float(base_value) * abs(complex(f_prime)) ** 2


# ---------------------------------------------------------------------------
# annulus


def bergman_annulus(zeta: complex, z: complex) -> float:
    """Kernel of ``A_zeta`` via ``(P(u) + c(omega1)) / (pi |z|^2)``.

    Here ``u = -2 log|z|`` and ``omega1 = -log|zeta|``; the lattice is
    ``2 omega1 Z + 2 pi i Z``.  The term ``-eta1/omega1`` inside ``P`` cancels
    against ``c`` analytically, so the sum is evaluated directly from the
    nome series without that cancellation.
    """
    zeta, z = complex(zeta), complex(z)
    _require(Family.ANNULUS, zeta, z)
    return math.exp(_annulus_log_g(zeta, z)) / (math.pi * abs(z) ** 2)


def _x_minus_sin(x: float) -> float:
    if abs(x) < 0.2:
        x2 = x * x
        return x * x2 * (1.0 / 6 - x2 * (1.0 / 120 - x2 * (1.0 / 5040 - x2 * (
            1.0 / 362880 - x2 / 39916800))))
    return x - math.sin(x)


def _annulus_series(u: float, w1: float):
    # returns (a, s, delta) with u^2 (P(u) + c) = 1 + delta; the constant
    # -eta1/w1 inside P cancels against c, so
    # P(u) + c = a^2 (csc^2(a u) - 8 sum n Q_n cos(2 n a u))
    if u < special.POLE_RADIUS or 2.0 * w1 - u < special.POLE_RADIUS:
        raise PoleError("evaluation point within the pole radius of a boundary circle")
    a = math.pi / (2.0 * w1)
    q2 = math.exp(-2.0 * math.pi * math.pi / w1)
    x = a * u
    s = math.sin(x)
    corr = 0.0
    n, q2n = 1, q2
    while True:
        term = n * q2n / (1.0 - q2n)
        corr += term * math.cos(2.0 * n * x)
        if term < 1e-18 * (1.0 + abs(corr)) and n > 1:
            break
        n += 1
        q2n *= q2
        if n > 5000:
            raise ConvergenceError("annulus nome series did not converge")
    delta = _x_minus_sin(x) * (x + s) / (s * s) - 8.0 * x * x * corr
    return a, s, delta


def _annulus_g(u: float, w1: float) -> float:
    """``P(u) + c(w1)`` for the lattice ``(2 w1, 2 pi i)`` and real ``u`` in ``(0, 2 w1)``."""
    _, _, delta = _annulus_series(u, w1)
    return (1.0 + delta) / (u * u)


def _annulus_log_g(zeta: complex, z: complex) -> float:
    u = -2.0 * math.log(abs(z))
    w1 = -math.log(abs(zeta))
    return math.log(_annulus_g(u, w1))


def _annulus_log_excess(zeta: complex, z: complex) -> float:
    # log(u^2 (P(u) + c)); the omitted -2 log u does not depend on zeta
    u = -2.0 * math.log(abs(z))
    w1 = -math.log(abs(zeta))
    return math.log1p(_annulus_series(u, w1)[2])


# ---------------------------------------------------------------------------
# disc family


def bergman_disc_family(zeta: complex, z: complex, theta: ThetaSpec = DEFAULT_THETA) -> float:
    """Kernel of the translated disc ``|z + exp(i theta(zeta))| < 1``."""
    zeta, z = complex(zeta), complex(z)
    _require(Family.DISC, zeta, z, theta)
    return disc_kernel(z + cmath.exp(1j * theta.value(zeta)))


# ---------------------------------------------------------------------------
# slit disc


def koebe(w: complex) -> complex:
    """Koebe function ``w / (1 + w)**2``."""
    w = complex(w)
    if abs(1.0 + w) < special.POLE_RADIUS:
        raise PoleError("Koebe function has a pole at w = -1")
    return w / (1.0 + w) ** 2


def koebe_prime(w: complex) -> complex:
    w = complex(w)
    if abs(1.0 + w) < special.POLE_RADIUS:
        raise PoleError("Koebe function has a pole at w = -1")
    return (1.0 - w) / (1.0 + w) ** 3


def koebe_inv(omega: complex) -> complex:
    """Inverse of the Koebe function onto the unit disc.

    Algebraically ``(1 - 2 omega - sqrt(1 - 4 omega)) / (2 omega)``; the form
    ``2 omega / (1 - 2 omega + sqrt(1 - 4 omega))`` used here is the same
    branch without the cancellation near ``omega = 0``.
    """
    omega = complex(omega)
    if omega.imag == 0.0 and omega.real >= 0.25:
        raise BranchCutError(f"omega={omega!r} lies on the cut [1/4, inf)")
    s = cmath.sqrt(1.0 - 4.0 * omega)
    return 2.0 * omega / (1.0 - 2.0 * omega + s)


def slit_params(zeta: complex) -> SlitParams:
    """``(t, theta)`` with ``zeta = exp(-i theta) K^{-1}(exp(-t)/4)``."""
    zeta = complex(zeta)
    rho = abs(zeta)
    if not (0.0 < rho < 1.0):
        raise DomainError("slit parameter needs 0 < |zeta| < 1")
    # 4 K(rho) = 1 - ((1 - rho)/(1 + rho))**2
    x = (1.0 - rho) / (1.0 + rho)
    t = -math.log1p(-x * x)
    th = (-cmath.phase(zeta)) % (2.0 * math.pi)
    if th >= 2.0 * math.pi:  # -tiny % 2 pi rounds up to 2 pi
        th = 0.0
    return SlitParams(t, th)


def _slit_perturbation(zeta: complex, z: complex):
    """Return ``(w0, dw, t)`` with ``E^{-1}(z) = w0 + dw`` and ``w0 = exp(i theta) z``.

    ``dw`` is computed from ``K(w) - K(w0) = (w - w0)(1 - w w0)/((1+w)^2 (1+w0)^2)``
    so it keeps full relative accuracy when the slit is short.
    """
    sp = slit_params(zeta)
    w0 = cmath.exp(1j * sp.theta) * z
    om = koebe(w0)
    dlt = math.expm1(sp.t)
    target = om * (1.0 + dlt)
    if target.imag == 0.0 and target.real >= 0.25:
        raise BranchCutError("slit map lands on the Koebe cut")
    w1 = koebe_inv(target)
    dw = om * dlt * (1.0 + w0) ** 2 * (1.0 + w1) ** 2 / (1.0 - w0 * w1)
    return w0, dw, sp.t


def slit_map_inv(zeta: complex, z: complex) -> complex:
    """``E_zeta^{-1}(z) = K^{-1}(exp(t) K(exp(i theta) z))``, a point of the unit disc."""
    zeta, z = complex(zeta), complex(z)
    _require(Family.SLIT, zeta, z)
    w0, dw, _ = _slit_perturbation(zeta, z)
    return w0 + dw


def _slit_log_excess(zeta: complex, z: complex) -> float:
    # log K_{D_zeta}(z) - log K_disc(z), evaluated without cancellation
    w0, dw, t = _slit_perturbation(zeta, z)
    r0 = 1.0 - abs(z) ** 2
    # 1 - |w|^2 = r0 - (2 Re(conj(w0) dw) + |dw|^2)
    num = 2.0 * (w0.conjugate() * dw).real + abs(dw) ** 2
    log_ratio = math.log1p(-num / r0)
    x1 = -dw / (1.0 - w0)
    x2 = dw / (1.0 + w0)
    log_abs1 = 0.5 * math.log1p(2.0 * x1.real + abs(x1) ** 2)
    log_abs2 = 0.5 * math.log1p(2.0 * x2.real + abs(x2) ** 2)
    # |w_z| = exp(t) |K'(w0)| / |K'(w)|,  K'(w) = (1-w)/(1+w)^3
    log_wz2 = 2.0 * t - 2.0 * log_abs1 + 6.0 * log_abs2
    return -2.0 * log_ratio + log_wz2


def bergman_slit(zeta: complex, z: complex) -> float:
    """Kernel of the slit disc, ``|w_z|^2 / (pi (1 - |w|^2)^2)`` with ``w = E_zeta^{-1}(z)``."""
    zeta, z = complex(zeta), complex(z)
    _require(Family.SLIT, zeta, z)
    return disc_kernel(z) * math.exp(_slit_log_excess(zeta, z))


def slit_map_inv_derivative(zeta: complex, z: complex) -> complex:
    """``d/dz E_zeta^{-1}(z)`` by the chain rule through the Koebe function."""
    zeta, z = complex(zeta), complex(z)
    _require(Family.SLIT, zeta, z)
    w0, dw, t = _slit_perturbation(zeta, z)
    rot = w0 / z if z != 0 else cmath.exp(1j * slit_params(zeta).theta)
    return rot * math.exp(t) * koebe_prime(w0) / koebe_prime(w0 + dw)


# ---------------------------------------------------------------------------
# rectangle


def _aspect_log_solve(rho: float, tol: float, max_iter: int) -> float:
    """Solve ``rho K(k) = K(k')`` for ``s = log k`` assuming ``rho >= 1``."""

    def g(s):
        m = Modulus.from_k(math.exp(s))
        K = special.complete_K(m)
        Kp = special.complete_K(m.complementary())
        return rho * K - Kp, m

    def dg(s, m):
        # d/ds = k d/dk; dk'/dk = -k/k'
        return m.k * (rho * special.dK_dk(m) + special.dK_dk(m.complementary()) * m.k / m.k_prime)

    hi = math.log(1.0 / _SQRT2)
    lo = math.log(4.0) - 0.5 * math.pi * rho - 1.0
    if lo < -700.0:
        raise DomainError("rectangle aspect ratio too extreme for double precision")
    glo, _ = g(lo)
    while glo > 0.0:
        lo -= 2.0
        glo, _ = g(lo)
    s = 0.5 * (lo + hi)
    for _ in range(max_iter):
        val, m = g(s)
        if val == 0.0:
            return s
        if val < 0.0:
            lo = s
        else:
            hi = s
        step = val / dg(s, m)
        s_new = s - step
        if not (lo < s_new < hi):
            s_new = 0.5 * (lo + hi)
        if abs(s_new - s) <= tol * max(1.0, abs(s)) or hi - lo <= tol:
            return s_new
        s = s_new
    raise ConvergenceError("aspect equation did not converge")


def solve_modulus(zeta: complex, tol: float = 1e-15, max_iter: int = 200) -> RectangleModulus:
    """Modulus ``k`` with ``K(k') / K(k) = Im zeta / Re zeta``.

    Solved in ``log k`` by Newton steps safeguarded with a bisection bracket.
    Wide rectangles are solved through the complementary equation so that
    ``k'`` rather than ``1 - k`` carries the precision.
    """
    zeta = complex(zeta)
    X, Y = zeta.real, zeta.imag
    if not (X > 0.0 and Y > 0.0) or not (math.isfinite(X) and math.isfinite(Y)):
        raise ParameterError("rectangle parameter needs Re zeta > 0 and Im zeta > 0")
    rho = Y / X
    if rho == 1.0:
        m = Modulus(1.0 / _SQRT2, 1.0 / _SQRT2)
    elif rho > 1.0:
        m = Modulus.from_k(math.exp(_aspect_log_solve(rho, tol, max_iter)))
    else:
        m = Modulus.from_k_prime(math.exp(_aspect_log_solve(1.0 / rho, tol, max_iter)))
    K = special.complete_K(m)
    Kp = special.complete_K(m.complementary())
    return RectangleModulus(m, K, Kp, X / K)


def series_coefficients() -> dict:
    """Coefficients of the expansion of ``k(1 + i + eps)`` around the square.

    ``a = b = K / (4 sqrt2 (2E - K))``, ``c = -a/2``, ``d = e = -sqrt2 a^2``
    with ``K``, ``E`` at ``k = 1/sqrt2``.
    """
    m = Modulus(1.0 / _SQRT2, 1.0 / _SQRT2)
    K = special.complete_K(m)
    E = special.complete_E(m)
    a = K / (4.0 * _SQRT2 * (2.0 * E - K))
    return {"k0": 1.0 / _SQRT2, "a": a, "b": a, "c": -0.5 * a,
            "d": -_SQRT2 * a * a, "e": -_SQRT2 * a * a}


def modulus_series(epsilon: complex) -> float:
    """Second-order expansion of ``k(1 + i + eps)``.

    ``k0 + 2Re((a+ib) eps) + 2Re((c+id) eps^2) + 2e|eps|^2``.
    """
    eps = complex(epsilon)
    co = series_coefficients()
    return (co["k0"] + 2.0 * (complex(co["a"], co["b"]) * eps).real
            + 2.0 * (complex(co["c"], co["d"]) * eps * eps).real
            + 2.0 * co["e"] * abs(eps) ** 2)


def bergman_rectangle(zeta: complex, z: complex) -> float:
    """Kernel of ``R_zeta`` via ``w = sn^2(u)``, ``u = K z / Re zeta``.

    ``K = |sn u cn u dn u K / Re zeta|^2 / (pi (Im sn^2 u)^2)``, the upper
    half-plane kernel transported by ``sn^2``.
    """
    zeta, z = complex(zeta), complex(z)
    _require(Family.RECTANGLE, zeta, z)
    return math.exp(_rectangle_log_kernel(zeta, z))


def _rectangle_log_kernel(zeta: complex, z: complex) -> float:
    rm = solve_modulus(zeta)
    u = rm.K * z / zeta.real
    J = special.jacobi(u, rm.k)
    im = 2.0 * J.sn.real * J.sn.imag
    if im <= 0.0:
        raise BoundaryGuardError("Im sn^2 u is not positive; point too close to an edge")
    num = abs(J.sn) * abs(J.cn) * abs(J.dn) * rm.K / zeta.real
    return 2.0 * math.log(num) - math.log(math.pi) - 2.0 * math.log(im)


# ---------------------------------------------------------------------------
# half strip


def _inv_sinh2(a: float) -> float:
    if a > 1.0:
        e = math.exp(-2.0 * a)
        return 4.0 * e / (1.0 - e) ** 2
    return 1.0 / math.sinh(a) ** 2


def bergman_halfstrip(zeta: complex, z: complex) -> float:
    """Kernel of ``S_zeta`` via ``w = sin^2 u``, ``u = pi z / (2 Re zeta)``.

    Written as ``(pi / (4 p^2)) (1/sinh^2(2y) + 1/sin^2(2x))`` with
    ``u = x + iy`` and ``p = Re zeta``; this equals
    ``|u' sin u cos u|^2 / (pi (Im sin^2 u)^2)`` and stays finite far up the
    strip.
    """
    zeta, z = complex(zeta), complex(z)
    _require(Family.HALFSTRIP, zeta, z)
    p = zeta.real
    c = math.pi / (2.0 * p)
    x, y = c * z.real, c * z.imag
    return math.pi / (4.0 * p * p) * (_inv_sinh2(2.0 * y) + 1.0 / math.sin(2.0 * x) ** 2)


# ---------------------------------------------------------------------------
# dispatch


def bergman_kernel(family, zeta: complex, z: complex, theta: ThetaSpec = DEFAULT_THETA) -> float:
    fam = Family.parse(family)
    if fam is Family.ANNULUS:
        return bergman_annulus(zeta, z)
    if fam is Family.DISC:
        return bergman_disc_family(zeta, z, theta)
    if fam is Family.SLIT:
        return bergman_slit(zeta, z)
    if fam is Family.RECTANGLE:
        return bergman_rectangle(zeta, z)
    return bergman_halfstrip(zeta, z)


def log_kernel_parts(family, zeta: complex, z: complex,
                     theta: ThetaSpec = DEFAULT_THETA) -> Tuple[float, float]:
    """Split ``log K_{D_zeta}(z, z)`` as ``base + rest`` with ``base`` free of ``zeta``.

    Second differences in ``zeta`` only see ``rest``.  For the slit disc
    ``base`` is the unit-disc term and ``rest`` is computed directly, which
    keeps the stencil accurate when the slit is very short.
    """
    fam = Family.parse(family)
    zeta, z = complex(zeta), complex(z)
    _require(fam, zeta, z, theta)
    if fam is Family.ANNULUS:
        u = -2.0 * math.log(abs(z))
        return -math.log(math.pi * abs(z) ** 2 * u * u), _annulus_log_excess(zeta, z)
    if fam is Family.DISC:
        return -math.log(math.pi), -2.0 * math.log(
            1.0 - abs(z + cmath.exp(1j * theta.value(zeta))) ** 2)
    if fam is Family.SLIT:
        return math.log(disc_kernel(z)), _slit_log_excess(zeta, z)
    if fam is Family.RECTANGLE:
        return 0.0, _rectangle_log_kernel(zeta, z)
    return 0.0, math.log(bergman_halfstrip(zeta, z))
