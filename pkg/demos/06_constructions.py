"""
Types with large seedbed and many descendants
=============================================

Three explicit constructions: the de Jonquières family, the ``2^s``
descendants obtained from subsets of distinct multiplicities, and the
block-splitting sequence ``y_N`` whose seedbed doubles each round.
"""

from homaloidal import format_type, parse_type, seedbed
from homaloidal.constructions import build_yN, jonquieres, power_set_descendants, split_blocks

print([format_type(jonquieres(d)) for d in range(2, 6)])

###############################################################################
# One descendant per subset E of the three distinct values of x.
x = parse_type("(6;3^2,2^4,1)")
for r in power_set_descendants(x, 3):
    flags = ", ".join(f"{c.name}: {c.holds}" for c in r.claims)
    print(f"{r.label:<12} degree {r.final.degree:3d}  {flags}")

###############################################################################
# Splitting a wide block doubles the number of wide blocks.
r = split_blocks(parse_type("(3;2,1^4)"), [1], 2)
print(format_type(r.final), [(c.name, c.holds) for c in r.claims])

###############################################################################
# The degrees of y_N grow quickly but stay below 2^(N^2) 10^N.
for n in range(1, 8):
    y = build_yN(n)
    print(f"N={n}: seedbed {seedbed(y.final):3d}, degree has {len(str(y.final.degree)):2d} digits, ok={y.ok}")
