"""The special functions behind the expansion, and the universal constant.

chi(z) = e^{-z}(z/(1-e^{-z}))^2 controls the resummed free energy; its second
derivative, re-expressed through xi(z) = e^z chi''(z) and the difference
quotient Q(z) = (xi(z) - xi(0))/z, produces a universal integral that enters
the eps^2 coefficient of every scenario.
"""
import math

from hexdimer import chi, chi_dd, li, q_func, universal_constant_detail, xi, zeta3

print("chi is even with chi(0) = 1 and a slow Taylor start:")
for z in (0.0, 0.1, 1.0, 5.0):
    print(f"  chi({z:>4}) = {chi(z):.12f}   chi(-{z}) - chi({z}) = {chi(-z) - chi(z):.1e}")
print(f"  chi''(0) = {chi_dd(0.0):+.12f}  (exactly -1/6)")
print(f"  xi(0)    = {xi(0.0):+.12f}")
print(f"  Q(0)     = {q_func(0.0):+.12f}")

print("\npolylogarithms assemble the leading coefficient:")
print(f"  Li_3(1)    = {li(3, 1.0):.12f}  = zeta(3)")
print(f"  zeta(3)    = {zeta3():.12f}")
print(f"  Li_1(0.5)  = {li(1, 0.5):.12f}  = ln 2 = {math.log(2):.12f}")

value, err = universal_constant_detail()
print("\nthe universal constant, int_0^inf e^{-z} Q(z) dz:")
print(f"  value       = {value:.12f}")
print(f"  error bound = {err:.2e}")
print("  (published reference: -0.080842)")
