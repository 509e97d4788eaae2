"""
How fast does N_d grow?
=======================

The normalised quantity ``c(d) = ln ln N_d / sqrt(ln d)`` stays between
``sqrt(ln 2)`` and ``2 sqrt(ln 2)`` in every computed degree from 16 on.
We also look at the largest seedbed (number of distinct multiplicities)
reached in each degree.
"""

from homaloidal.enumeration import count_by_tree, histogram
from homaloidal.growth import SQRT_LN2, TWO_SQRT_LN2, average_step_ratio, c_curve, max_seedbed

report = count_by_tree(70)
curve = c_curve(report)
print(f"band: [{SQRT_LN2:.4f}, {TWO_SQRT_LN2:.4f}]")
for d, n, c in curve.points[::6]:
    print(f"d={d:3d}  N_d={n:8d}  c(d)={c:.4f}")
print("outside the band from d=16:", curve.out_of_band() or "none")

###############################################################################
# Maximal seedbed per degree.
rows = max_seedbed(report, beta=1.0)
print("s(d):", [r.s_d for r in rows])

###############################################################################
# Distribution of (m1, m2) in a fixed degree; the grid is indexed by raw values.
h = histogram(30, "m1m2")
print(f"degree 30: {h.total} types over {len(h.occupied())} occupied (m1, m2) cells")
m1, m2, c = max(h.occupied(), key=lambda cell: cell[2])
print(f"busiest cell: m1={m1}, m2={m2} with {c} types")

###############################################################################
# Among types whose first multiplicity is neither small nor large, the degree
# always grows by a definite factor from parent to child.
print("smallest d(x)/d(parent) - 1 in the average regime up to degree 24:", average_step_ratio(24))
