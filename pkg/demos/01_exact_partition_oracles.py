"""Three independent routes to the same partition function.

For hexagon side lengths (m, n, k) small enough to enumerate, the weighted
count of cube piles can be computed by brute force, by the classical triple
product formula, and as the normalized absolute determinant of the Kasteleyn
matrix.  All three must agree to roundoff.
"""
import math

from hexdimer import (
    BoxShape,
    energy_histogram,
    kasteleyn_partition,
    log_z_macmahon,
    oracle_partition,
)

print("Z(q) three ways, shapes up to 3 x 3 x 3")
print(f"{'shape':>10} {'q':>5} {'enumeration':>16} {'product':>16} {'determinant':>16}")
for shape in (BoxShape(1, 1, 1), BoxShape(2, 2, 2), BoxShape(3, 2, 1), BoxShape(3, 3, 3)):
    for q in (0.3, 0.9):
        z_enum = oracle_partition(shape, q)
        z_prod = math.exp(log_z_macmahon(shape, q))
        z_det = kasteleyn_partition(shape, q)
        print(f"{str((shape.m, shape.n, shape.k)):>10} {q:>5} "
              f"{z_enum:>16.12f} {z_prod:>16.12f} {z_det:>16.12f}")

print("\nZ is a polynomial in q with nonnegative integer coefficients.")
shape = BoxShape(2, 2, 2)
hist = energy_histogram(shape)
terms = " + ".join(f"{hist[e]} q^{e}" for e in sorted(hist))
print(f"(2,2,2): Z(q) = {terms}")
print(f"total configurations: {sum(hist.values())} (matchings at q=1: "
      f"{kasteleyn_partition(shape, 1.0):.6f})")
