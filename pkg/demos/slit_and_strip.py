"""Slit discs near zeta = 1 and half strips as Im z -> infinity."""

import math

from bergman_levi.levi import levi_fd, levi_slit_boundary, levi_slit_limit, levi_slit_limit_derived
from bergman_levi.theorems import ProbeSettings, halfstrip_tail_limit, slit_boundary_value, tail_probe

eta = 1e-6
print("slit disc, zeta = 1 - eta")
print(f"{'z':>14} {'FD':>12} {'derived':>12} {'printed':>12}")
for z in (0.0, 0.3, -0.5, 0.2 + 0.6j, 0.7j):
    fd = levi_fd("slit", 1 - eta, z).value
    r, t = abs(z), math.atan2(complex(z).imag, complex(z).real)
    print(f"{str(z):>14} {fd:12.6f} {levi_slit_limit_derived(z):12.6f} {levi_slit_limit(r, t):12.6f}")

print("\nboundary profile r -> 1")
for phi in (math.pi / 6, math.pi / 2, math.pi):
    rep = slit_boundary_value(phi)
    print(f"angle {phi:.4f}: fitted {rep.fitted_limit:.2e} (order {rep.fitted_order:.2f}),"
          f" printed {levi_slit_boundary(phi):.6f}")

print("\nhalf strip tail, zeta = 1 + eta")
for x in (0.25, 0.5, 0.75):
    rep = tail_probe(x, ProbeSettings())
    print(f"Re z = {x}: fitted {rep.fitted_limit:.6f}  closed form {halfstrip_tail_limit(x):.6f}")
