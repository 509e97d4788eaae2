"""
Kalmár's function and the constant rho
======================================

``K_n`` counts ordered factorizations of ``n`` into factors at least 2.
Its partial sums grow like ``a n^rho`` where ``zeta(rho) = 2`` and
``a = 1/|rho zeta'(rho)|``.
"""

import math

from homaloidal.growth import kalmar, kalmar_table, zeta, zeta_rho

print("K_1..K_12:", [kalmar(n) for n in range(1, 13)])

rho, a = zeta_rho()
print(f"rho = {rho:.15f}, zeta(rho) - 2 = {zeta(rho) - 2:.2e}")
print(f"a   = {a:.15f}")
print(f"zeta(2) - pi^2/6 = {zeta(2.0) - math.pi ** 2 / 6:.2e}")

###############################################################################
# The sieve fills the whole table at once; the ratio slowly settles near 1.
table = kalmar_table(10 ** 6)
for n in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
    print(f"n = {n:>8d}   sum K / (a n^rho) = {table.ratio(n):.5f}")
