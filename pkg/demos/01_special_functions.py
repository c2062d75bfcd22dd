"""Spherical Bessel zeros and spinor-harmonic densities.

Walks through the special-function layer: zero tables with their interlacing
structure, the first-zero lower bound that underpins the vacuum-equivalence
proof, and the addition-theorem sum rule for |Y_lm|^2.
"""

import math

import numpy as np

from rotsphere import assoc_legendre_density, bessel_zeros

print("First zeros of j_n: xi_{n,1} compared with the lower bound n + 1")
for n in range(0, 9):
    xi1 = bessel_zeros(n, 1)[0]
    print(f"  n={n}: xi_1 = {xi1:.6f}  (n + 1 = {n + 1})")

print("\nInterlacing xi_{n,i} < xi_{n+1,i} < xi_{n,i+1} for n = 3:")
z3 = bessel_zeros(3, 5)
z4 = bessel_zeros(4, 5)
for i in range(4):
    print(f"  {z3[i]:9.5f} < {z4[i]:9.5f} < {z3[i + 1]:9.5f}")

print("\nOrder 0 zeros are exact multiples of pi:")
print(" ", np.round(bessel_zeros(0, 5) / math.pi, 12))

print("\nAddition theorem: sum_m |Y_lm(theta)|^2 = (2l+1)/(4 pi), any theta")
for l in (0, 1, 5, 20):
    theta = 1.234
    total = sum(assoc_legendre_density(l, m, theta) for m in range(-l, l + 1))
    print(f"  l={l:2d}: sum = {total:.12f}, (2l+1)/(4 pi) = "
          f"{(2 * l + 1) / (4 * math.pi):.12f}")
