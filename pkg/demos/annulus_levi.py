"""Levi form of log K for annuli {|zeta| < |z| < 1}.

Compares three evaluations along a radius: finite differences, the exact
derivative of the nome series, and the printed closed form.  Then probes
both boundary circles and prints the fitted orders.
"""

import math

import numpy as np

from bergman_levi.levi import (
    ApproachPath,
    geometric_path,
    levi_annulus_analytic,
    levi_annulus_exact,
    levi_fd,
    probe_limit,
)

r = 0.5
print(f"zeta = {r}")
print(f"{'|z|':>6} {'FD':>14} {'exact':>14} {'printed':>14}")
for t in np.linspace(0.1, 0.9, 9):
    z = r + t * (1 - r)
    fd = levi_fd("annulus", r, z).value
    ex = levi_annulus_exact(r, z).value
    pr = levi_annulus_analytic(r, z).value
    print(f"{z:6.3f} {fd:14.8f} {ex:14.8f} {pr:14.8f}")

# outer circle: order 2 in u = -2 log|z|
rep = probe_limit(geometric_path("annulus", r, 1.0, -1.0, 0.25, 0.5, 12))
print(f"\n|z| -> 1     limit {rep.fitted_limit:.3e}  order {rep.fitted_order:.3f}")

# inner circle moves with zeta, so the zeta-derivative blows up
zeta = r + 1e-6
us = [0.1 * 0.5 ** j for j in range(12)]
w1 = -math.log(zeta)
inner = ApproachPath("annulus", [zeta] * 12, [math.exp(-(2 * w1 - u) / 2) for u in us], us)
rep = probe_limit(inner)
print(f"|z| -> zeta  diverged {rep.diverged}  order {rep.fitted_order:.3f}")
