"""Cross-checks of the fast evaluators against the oracles and exact identities.

:func:`run_selftest` returns one :class:`CheckRow` per check with the worst
observed error and its tolerance.  Random samples are drawn from a numpy
generator seeded by the caller (the CLI reads ``BKL_SEED``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from . import oracles, special
from .families import (
    bergman_annulus,
    bergman_rectangle,
    koebe,
    koebe_inv,
    solve_modulus,
)
from .levi import levi_annulus_exact, levi_fd

__all__ = ["CheckRow", "run_selftest", "corrected_p_at_half_period"]


@dataclass(frozen=True)
class CheckRow:
    name: str
    error: float
    tol: float
    passed: bool


def corrected_p_at_half_period(w1: float) -> float:
    """``w1^2 P(w1)`` from the nome expansion.

    ``pi^2/6 + 4 pi^2 sum_{n odd} n q^{2n} / (1 - q^{2n})`` with
    ``q^2 = exp(-2 pi^2 / w1)``; the sum is the correction to ``pi^2/6``.
    """
    q2 = math.exp(-2.0 * math.pi ** 2 / w1)
    s = 0.0
    n = 1
    while True:
        t = n * q2 ** n / (1.0 - q2 ** n)
        s += t
        if t < 1e-20:
            break
        n += 2
    return math.pi ** 2 / 6.0 + 4.0 * math.pi ** 2 * s


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _jacobi_samples(rng, n):
    out = []
    for _ in range(n):
        k = float(rng.uniform(0.05, 0.95))
        m = special.Modulus.from_k(k)
        K = special.complete_K(m)
        Kp = special.complete_K(m.complementary())
        u = complex(rng.uniform(-K, K), rng.uniform(-0.9 * Kp, 0.9 * Kp))
        out.append((u, m))
    return out


def _check_legendre():
    worst = 0.0
    for k in np.arange(0.2, 0.95, 0.1):
        m = special.Modulus.from_k(float(k))
        K, E = special.complete_K(m), special.complete_E(m)
        Kp, Ep = special.complete_K(m.complementary()), special.complete_E(m.complementary())
        worst = max(worst, abs(E * Kp + Ep * K - K * Kp - math.pi / 2))
    return worst


def _check_agm_quadrature():
    worst = 0.0
    for k in np.arange(0.1, 0.95, 0.1):
        k = float(k)
        worst = max(worst, abs(special.complete_K(k) - oracles.quadrature_K(k)),
                    abs(special.complete_E(k) - oracles.quadrature_E(k)))
    return worst


def _check_pythagorean(rng):
    worst = 0.0
    for u, m in _jacobi_samples(rng, 200):
        J = special.jacobi(u, m)
        worst = max(worst, abs(J.sn ** 2 + J.cn ** 2 - 1.0),
                    abs(J.dn ** 2 + m.k ** 2 * J.sn ** 2 - 1.0))
    return worst


def _check_addition(rng):
    worst = 0.0
    samples = _jacobi_samples(rng, 100)
    for u, m in samples:
        v = 0.5 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        a, b = special.jacobi(u, m), special.jacobi(v, m)
        den = 1.0 - m.k ** 2 * a.sn ** 2 * b.sn ** 2
        sn = (a.sn * b.cn * b.dn + b.sn * a.cn * a.dn) / den
        worst = max(worst, abs(sn - special.jacobi(u + v, m).sn) / max(1.0, abs(sn)))
    return worst


def _check_inverse(rng):
    worst = 0.0
    for _ in range(20):
        k = float(rng.uniform(0.05, 0.95))
        K = special.complete_K(k)
        u = float(rng.uniform(0.02, 0.98)) * K
        s = special.jacobi_real(u, k)[0]
        worst = max(worst, abs(special.incomplete_F(s, k).real - u))
    return worst


def _check_laurent():
    worst = 0.0
    for r in np.linspace(0.3, 0.7, 5):
        for t in np.linspace(0.2, 0.8, 5):
            z = float(r + t * (1 - r))
            worst = max(worst, _rel(bergman_annulus(float(r), z),
                                    oracles.laurent_annulus_kernel(float(r), z)))
    return worst


def rectangle_oracle_points():
    return [0.5 + 0.5j, 0.25 + 0.3j, 0.7 + 0.6j, 0.35 + 0.8j, 0.6 + 0.2j]


def _check_gram_schmidt():
    worst = 0.0
    for z in rectangle_oracle_points():
        worst = max(worst, _rel(oracles.gram_schmidt_kernel(1 + 1j, z, 40),
                                bergman_rectangle(1 + 1j, z)))
    return worst


def _check_disc_control():
    ref = 1.0 / (math.pi * (1 - 0.09) ** 2)
    return _rel(oracles.gram_schmidt_disc_kernel(0.3, 40), ref)


def _check_lattice():
    worst = 0.0
    for w1 in (0.4, 0.7, 1.0):
        L = special.Lattice(w1)
        for u in (0.3 * w1, complex(0.5 * w1, 0.7), complex(1.3 * w1, -1.1)):
            worst = max(worst, _rel(oracles.lattice_p(u, L), special.weierstrass_p(u, L)))
    return worst


def _check_corrected_identity():
    worst = 0.0
    for w1 in (0.4, 0.7, 1.0, 1.5):
        L = special.Lattice(w1)
        worst = max(worst, _rel(w1 * w1 * special.weierstrass_p(w1, L).real,
                                corrected_p_at_half_period(w1)))
    return worst


def _check_koebe(rng):
    worst = 0.0
    for _ in range(100):
        w = cmath.rect(float(rng.uniform(0, 0.999)), float(rng.uniform(-math.pi, math.pi)))
        worst = max(worst, abs(koebe_inv(koebe(w)) - w))
    return worst


def _check_modulus():
    worst = 0.0
    for zeta in (1 + 1j, 1.2 + 0.9j, 0.8 + 1.3j, 1.4 + 1.1j, 0.6 + 0.7j):
        rm = solve_modulus(zeta)
        worst = max(worst, abs(zeta.imag * rm.K - zeta.real * rm.K_prime))
    return worst


def _check_annulus_levi():
    worst = 0.0
    for r in np.linspace(0.3, 0.7, 5):
        for t in np.linspace(0.2, 0.8, 5):
            z = float(r + t * (1 - r))
            worst = max(worst, _rel(levi_fd("annulus", float(r), z).value,
                                    levi_annulus_exact(float(r), z).value))
    return worst


def run_selftest(seed: int = 0) -> List[CheckRow]:
    """Run every check; rows are returned in a fixed order."""
    rng = np.random.default_rng(seed)
    checks: List[tuple] = [
        ("legendre_relation", _check_legendre, 1e-12),
        ("agm_vs_quadrature", _check_agm_quadrature, 1e-12),
        ("jacobi_pythagorean", lambda: _check_pythagorean(rng), 1e-12),
        ("jacobi_addition", lambda: _check_addition(rng), 1e-10),
        ("incomplete_F_roundtrip", lambda: _check_inverse(rng), 1e-11),
        ("annulus_vs_laurent", _check_laurent, 1e-9),
        ("rectangle_vs_gram_schmidt", _check_gram_schmidt, 1e-4),
        ("disc_gram_schmidt_control", _check_disc_control, 1e-6),
        ("p_qseries_vs_lattice", _check_lattice, 1e-8),
        ("p_half_period_nome_identity", _check_corrected_identity, 1e-12),
        ("koebe_roundtrip", lambda: _check_koebe(rng), 1e-13),
        ("aspect_equation_residual", _check_modulus, 1e-12),
        ("annulus_levi_fd_vs_exact", _check_annulus_levi, 1e-5),
    ]
    rows = []
    for name, fn, tol in checks:
        err = float(fn())
        rows.append(CheckRow(name, err, tol, bool(err <= tol)))
    return rows
