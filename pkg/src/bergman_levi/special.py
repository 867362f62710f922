"""Elliptic integrals, Jacobi elliptic functions and Weierstrass functions.

Everything here works in double precision with plain ``math``/``cmath``
scalars.  Complete integrals use the arithmetic-geometric mean, Jacobi
functions of a complex argument are assembled from real-argument values at
the modulus ``k`` and its complement ``k'``, and the Weierstrass functions
are evaluated from nome series for the rectangular lattice
``2*omega1*Z + 2*omega2*Z`` with ``omega2`` purely imaginary.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Union

from scipy import integrate

from .errors import BranchCutError, ConvergenceError, DomainError, PoleError

__all__ = [
    "Modulus",
    "EllipticValues",
    "JacobiTriple",
    "Lattice",
    "POLE_RADIUS",
    "complete_K",
    "complete_E",
    "elliptic_values",
    "dK_dk",
    "dE_dk",
    "incomplete_F",
    "jacobi",
    "jacobi_real",
    "weierstrass_p",
    "weierstrass_zeta",
    "weierstrass_eta",
    "robin_c",
]

POLE_RADIUS = 1e-8

_EPS = 2.0 ** -53


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus ``k`` together with ``k' = sqrt(1 - k**2)``.

    Build with :meth:`from_k` or :meth:`from_k_prime`; the latter keeps full
    relative accuracy of ``k'`` when ``k`` is close to 1.  For ``k' < 1e-8``
    the stored ``k`` rounds to 1.0; the pair is still valid because every
    evaluator reads ``k'`` where it matters.
    """

    k: float
    k_prime: float

    def __post_init__(self):
        if not (0.0 < self.k <= 1.0) or not (0.0 < self.k_prime <= 1.0):
            raise DomainError(f"modulus must satisfy 0 < k < 1, got k={self.k!r}")
        if abs(self.k * self.k + self.k_prime * self.k_prime - 1.0) > 1e-15:
            raise DomainError("k**2 + k'**2 must equal 1")

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        k = float(k)
        if not (0.0 < k < 1.0):
            raise DomainError(f"modulus must satisfy 0 < k < 1, got {k!r}")
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_k_prime(cls, k_prime: float) -> "Modulus":
        kp = float(k_prime)
        if not (0.0 < kp < 1.0):
            raise DomainError(f"complementary modulus must lie in (0, 1), got {kp!r}")
        return cls(math.sqrt((1.0 - kp) * (1.0 + kp)), kp)

    def complementary(self) -> "Modulus":
        return Modulus(self.k_prime, self.k)


ModulusLike = Union[float, Modulus]


def _as_modulus(k: ModulusLike) -> Modulus:
    if isinstance(k, Modulus):
        return k
    return Modulus.from_k(k)


@dataclass(frozen=True)
class EllipticValues:
    """Complete integrals ``K(k)``, ``E(k)`` and ``K'(k) = K(k')``."""

    K: float
    E: float
    K_prime: float


@dataclass(frozen=True)
class JacobiTriple:
    sn: complex
    cn: complex
    dn: complex
    u: complex
    k: float


@dataclass(frozen=True)
class Lattice:
    """Rectangular lattice with half periods ``omega1 > 0`` and ``omega2``.

    ``omega2`` must be purely imaginary with positive imaginary part; the
    annulus kernel uses the default ``omega2 = i*pi``.
    """

    omega1: float
    omega2: complex = 1j * math.pi

    def __post_init__(self):
        if not self.omega1 > 0:
            raise DomainError("omega1 must be positive")
        w2 = complex(self.omega2)
        if w2.real != 0.0 or not w2.imag > 0:
            raise DomainError("omega2 must be purely imaginary with Im > 0")


# ---------------------------------------------------------------------------
# complete elliptic integrals


def _agm(k: float, kp: float):
    """Return ``(a_N, [c_0, c_1, ...])`` of the AGM started at ``(1, k')``."""
    a, b = 1.0, kp
    cs = [k]
    for _ in range(64):
        c = 0.5 * (a - b)
        if abs(c) <= _EPS * a:
            return a, cs
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        cs.append(c)
    raise ConvergenceError("AGM failed to converge")


def complete_K(k: ModulusLike) -> float:
    """Complete elliptic integral of the first kind, ``K(k) = pi / (2 AGM(1, k'))``."""
    m = _as_modulus(k)
    a, _ = _agm(m.k, m.k_prime)
    return math.pi / (2.0 * a)


def complete_E(k: ModulusLike) -> float:
    """Complete elliptic integral of the second kind.

    Uses ``E = K * (1 - sum_n 2**(n-1) c_n**2)`` with the ``c_n`` of the
    same AGM run that produced ``K``.
    """
    m = _as_modulus(k)
    a, cs = _agm(m.k, m.k_prime)
    s = 0.0
    for n, c in enumerate(cs):
        s += 2.0 ** (n - 1) * c * c
    return math.pi / (2.0 * a) * (1.0 - s)


def elliptic_values(k: ModulusLike) -> EllipticValues:
    m = _as_modulus(k)
    return EllipticValues(complete_K(m), complete_E(m), complete_K(m.complementary()))


def dK_dk(k: ModulusLike) -> float:
    """``dK/dk = (E - k'^2 K) / (k k'^2)``."""
    m = _as_modulus(k)
    kp2 = m.k_prime * m.k_prime
    return (complete_E(m) - kp2 * complete_K(m)) / (m.k * kp2)


def dE_dk(k: ModulusLike) -> float:
    """``dE/dk = (E - K) / k``."""
    m = _as_modulus(k)
    return (complete_E(m) - complete_K(m)) / m.k


# ---------------------------------------------------------------------------
# incomplete integral of the first kind


def incomplete_F(w: complex, k: ModulusLike) -> complex:
    """Incomplete elliptic integral ``F(w, k)`` on the principal branch.

    The integrand ``1/sqrt((1 - t^2)(1 - k^2 t^2))`` is integrated along the
    straight segment from 0 to ``w`` with principal square roots.  That
    segment stays off the cuts ``|t| >= 1`` and ``|t| >= 1/k`` on the real
    axis unless ``w`` itself lies on them.  The substitution
    ``t = w (1 - v^2)`` removes the square-root singularity at ``w = +-1``.
    """
    m = _as_modulus(k)
    w = complex(w)
    if w == 0:
        return 0j
    if w == 1:
        return complex(complete_K(m))
    if w.imag == 0.0:
        x = abs(w.real)
        if x == 1.0 or x == 1.0 / m.k:
            raise DomainError(f"singular endpoint w={w!r}")
        if x > 1.0:
            raise BranchCutError(f"w={w!r} lies on a branch cut of F")
    k2 = m.k * m.k

    def integrand(v):
        s = 1.0 - v * v
        t2 = (s * w) ** 2
        return 2.0 * v * w / (cmath.sqrt(1.0 - t2) * cmath.sqrt(1.0 - k2 * t2))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val = integrate.quad(integrand, 0.0, 1.0, complex_func=True,
                             epsabs=1e-15, epsrel=1e-14, limit=400)[0]
    return complex(val)


# ---------------------------------------------------------------------------
# Jacobi elliptic functions


def _sncndn_landen(x: float, k: float, kp: float):
    # Descending Landen / AGM scheme for 0 <= x <= K.
    if k == 0.0:
        return math.sin(x), math.cos(x), 1.0
    a, b = 1.0, kp
    As, Cs = [1.0], [k]
    for _ in range(64):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        As.append(a)
        Cs.append(c)
        if abs(c) <= _EPS * a:
            break
    else:
        raise ConvergenceError("Landen iteration failed to converge")
    n = len(As) - 1
    phi = 2.0 ** n * As[n] * x
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(Cs[j] / As[j] * math.sin(phi)))
    sn, cn = math.sin(phi), math.cos(phi)
    dn = math.sqrt(kp * kp + k * k * cn * cn)
    return sn, cn, dn


def jacobi_real(x: float, k: ModulusLike):
    """Real-argument ``(sn, cn, dn)``.

    The argument is reduced to ``[0, K]`` with the period and reflection
    rules; on ``(K/2, K]`` the quarter-period shift
    ``sn(K - t) = cn t / dn t``, ``cn(K - t) = k' sn t / dn t``,
    ``dn(K - t) = k' / dn t`` keeps ``cn`` relatively accurate near ``K``.
    """
    m = _as_modulus(k)
    K = complete_K(m)
    x = float(x)
    # reduce to [-2K, 2K)
    x = math.fmod(x, 4.0 * K)
    if x >= 2.0 * K:
        x -= 4.0 * K
    elif x < -2.0 * K:
        x += 4.0 * K
    sgn = 1.0
    if x < 0.0:
        x, sgn = -x, -1.0
    cn_sign = 1.0
    if x > K:
        x = 2.0 * K - x
        cn_sign = -1.0
    if x > 0.5 * K:
        t = K - x
        s, c, d = _sncndn_landen(t, m.k, m.k_prime)
        sn, cn, dn = c / d, m.k_prime * s / d, m.k_prime / d
    else:
        sn, cn, dn = _sncndn_landen(x, m.k, m.k_prime)
    return sgn * sn, cn_sign * cn, dn


def _nearest_sn_pole_distance(u: complex, K: float, Kp: float) -> float:
    # poles of sn, cn, dn sit at 2mK + (2n+1) i K'
    m = round(u.real / (2.0 * K))
    n = round((u.imag / Kp - 1.0) / 2.0)
    return abs(u - complex(2.0 * m * K, (2.0 * n + 1.0) * Kp))


def jacobi(u: complex, k: ModulusLike, pole_radius: float = POLE_RADIUS) -> JacobiTriple:
    """``sn``, ``cn``, ``dn`` at a complex argument.

    With ``u = x + iy``, ``(s, c, d)`` the real values at ``(x, k)`` and
    ``(s1, c1, d1)`` those at ``(y, k')``, the addition theorem combined with
    Jacobi's imaginary transformation gives::

        sn = (s d1 + i c d s1 c1) / D
        cn = (c c1 - i s d s1 d1) / D
        dn = (d c1 d1 - i k^2 s c s1) / D,     D = c1^2 + k^2 s^2 s1^2

    Raises :class:`PoleError` within ``pole_radius`` of a pole.
    """
    m = _as_modulus(k)
    u = complex(u)
    if not (math.isfinite(u.real) and math.isfinite(u.imag)):
        raise DomainError("argument must be finite")
    K = complete_K(m)
    Kp = complete_K(m.complementary())
    if _nearest_sn_pole_distance(u, K, Kp) < pole_radius:
        raise PoleError(f"u={u!r} is within {pole_radius} of a pole of sn")
    s, c, d = jacobi_real(u.real, m)
    s1, c1, d1 = jacobi_real(u.imag, m.complementary())
    k2 = m.k * m.k
    den = c1 * c1 + k2 * s * s * s1 * s1
    sn = complex(s * d1, c * d * s1 * c1) / den
    cn = complex(c * c1, -s * d * s1 * d1) / den
    dn = complex(d * c1 * d1, -k2 * s * c * s1) / den
    return JacobiTriple(sn, cn, dn, u, m.k)


# ---------------------------------------------------------------------------
# Weierstrass functions on rectangular lattices


def _rect_nome_series(u: complex, W: float, Wp: float, want_zeta: bool):
    """``(p, zeta, eta)`` for half periods ``W`` (real) and ``i Wp``.

    ``u`` must already lie in the fundamental cell ``|Re u| <= W``,
    ``|Im u| <= Wp``.  The series converge like ``q**n`` with
    ``q = exp(-pi Wp / W)``.
    """
    a = math.pi / (2.0 * W)
    q2 = math.exp(-2.0 * math.pi * Wp / W)
    sum_nQ = 0.0
    p_corr = 0j
    z_corr = 0j
    n = 1
    q2n = q2
    while True:
        Qn = q2n / (1.0 - q2n)
        arg = 2.0 * n * a * u
        sum_nQ += n * Qn
        p_term = n * Qn * cmath.cos(arg)
        p_corr += p_term
        if want_zeta:
            z_corr += Qn * cmath.sin(arg)
        # |cos(arg)| <= cosh(2 n a Wp) so the terms decay like q**n
        if n * Qn * math.cosh(2.0 * n * a * abs(u.imag)) < 1e-18 * (1.0 + abs(p_corr)) and n > 1:
            break
        n += 1
        q2n *= q2
        if n > 2000:
            raise ConvergenceError("nome series did not converge")
    eta = math.pi ** 2 / (12.0 * W) * (1.0 - 24.0 * sum_nQ)
    s = cmath.sin(a * u)
    p = -eta / W + a * a / (s * s) - 8.0 * a * a * p_corr
    zeta = None
    if want_zeta:
        zeta = eta * u / W + a * cmath.cos(a * u) / s + 4.0 * a * z_corr
    return p, zeta, eta


def _reduce(u: complex, W: float, Wp: float):
    m = round(u.real / (2.0 * W))
    n = round(u.imag / (2.0 * Wp))
    return complex(u.real - 2.0 * m * W, u.imag - 2.0 * n * Wp), m, n


def _check_lattice_pole(u: complex, W: float, Wp: float, pole_radius: float):
    r, _, _ = _reduce(u, W, Wp)
    if abs(r) < pole_radius:
        raise PoleError(f"u={u!r} is within {pole_radius} of a lattice point")


def _p_and_zeta(u: complex, W: float, Wp: float, want_zeta: bool):
    """Reduced evaluation picking the orientation with the smaller nome."""
    r, m, n = _reduce(u, W, Wp)
    if W <= Wp:
        p, z, eta1 = _rect_nome_series(r, W, Wp, want_zeta)
        # Legendre relation eta1*omega2 - eta2*omega1 = i*pi/2
        eta2 = (eta1 * 1j * Wp - 0.5j * math.pi) / W
    else:
        # rotate: L = i L' with L' having half periods Wp and i W
        p_r, z_r, eta_r = _rect_nome_series(-1j * r, Wp, W, want_zeta)
        p = -p_r
        z = -1j * z_r if want_zeta else None
        # eta2 = zeta(i Wp) = -i zeta'(Wp) = -i eta_r
        eta2 = -1j * eta_r
        eta1 = ((eta2 * W) + 0.5j * math.pi) / (1j * Wp)
        eta1 = eta1.real
    if want_zeta:
        z = z + 2.0 * m * eta1 + 2.0 * n * eta2
    return p, z, eta1


def weierstrass_p(u: complex, L: Lattice, pole_radius: float = POLE_RADIUS) -> complex:
    """Weierstrass ``P(u)`` for the rectangular lattice ``L``."""
    W, Wp = L.omega1, complex(L.omega2).imag
    u = complex(u)
    _check_lattice_pole(u, W, Wp, pole_radius)
    p, _, _ = _p_and_zeta(u, W, Wp, want_zeta=False)
    return complex(p)


def weierstrass_zeta(u: complex, L: Lattice, pole_radius: float = POLE_RADIUS) -> complex:
    """Weierstrass zeta function, ``zeta' = -P``, odd in ``u``."""
    W, Wp = L.omega1, complex(L.omega2).imag
    u = complex(u)
    _check_lattice_pole(u, W, Wp, pole_radius)
    _, z, _ = _p_and_zeta(u, W, Wp, want_zeta=True)
    return complex(z)


def weierstrass_eta(L: Lattice) -> float:
    """``eta1 = zeta(omega1)`` (real for rectangular lattices)."""
    W, Wp = L.omega1, complex(L.omega2).imag
    _, _, eta1 = _p_and_zeta(complex(0.5 * W), W, Wp, want_zeta=False)
    return float(eta1)


def robin_c(omega1: float) -> float:
    """Constant ``c(omega1) = zeta(omega1) / omega1`` for the lattice ``(2 omega1, 2 pi i)``."""
    if not omega1 > 0:
        raise DomainError("omega1 must be positive")
    L = Lattice(float(omega1))
    return weierstrass_zeta(omega1, L).real / omega1
