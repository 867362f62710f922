"""Rectangle family: modulus, kernel cross-check and corner probes.

Run with ``python3 demos/rectangle_corners.py``.
"""

from bergman_levi.families import bergman_rectangle, modulus_series, series_coefficients, solve_modulus
from bergman_levi.oracles import gram_schmidt_kernel
from bergman_levi.theorems import reproduce_theorem

sol = solve_modulus(1 + 1j)
co = series_coefficients()
print(f"k(1+i) = {sol.k.k:.15f}   a = {co['a']:.14f}   16a^2 = {16 * co['a'] ** 2:.6f}")
eps = 1e-3 + 2e-3j
print(f"k(1+i+eps): solver {solve_modulus(1 + 1j + eps).k.k:.12f}, series {modulus_series(eps):.12f}")

for z in (0.5 + 0.5j, 0.2 + 0.7j):
    a = bergman_rectangle(1 + 1j, z)
    b = gram_schmidt_kernel(1 + 1j, z, 40)
    print(f"K({z}) = {a:.10f}   Gram-Schmidt {b:.10f}   rel {abs(a - b) / b:.1e}")

print()
for row in reproduce_theorem(5):
    status = "ok " if row.passed else "NO "
    print(f"{status} {row.claim:12s} target {row.target:<10.6g} estimate {row.estimate:<12.6g}"
          f" order {row.order:7.3f}  {row.note}")
