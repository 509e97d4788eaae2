"""
Walking the Hudson tree
=======================

Every proper type of degree at least 2 has a unique parent, obtained by one
step of Hudson's test.  Going the other way, each admissible value triple
(a *seed*) gives one child.  Together they organise all homaloidal types in
a tree rooted at ``(1;0)``.
"""

from homaloidal import ROOT, children, format_type, lineage_to_root, parent, parse_type
from homaloidal.enumeration import proper_types

# The tree up to degree 6, drawn as an indented outline.
def show(t, depth=0, max_degree=6):
    print("    " * depth + format_type(t))
    for seed, c in children(t, max_degree):
        show(c, depth + 1, max_degree)


show(ROOT)
print(len(proper_types(6)), "types of degree <= 6")

###############################################################################
# Parents and the seed that was used to produce each type.
x = parse_type("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)")
p, seed = parent(x)
print(format_type(x))
print("  parent", format_type(p), "seed", seed.values, "degree drop", seed.nabla)

###############################################################################
# A lineage lists every ancestor, root first, with the seed used at each step.
lin = lineage_to_root(x)
for s, t in zip(lin.seeds, lin.types[1:]):
    mark = "*" if s.star else " "
    print(f"  {mark} {str(s.values):<14} -> {format_type(t)}")
