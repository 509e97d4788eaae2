"""
Checking inequalities along lineages
====================================

The property suite verifies a list of inequalities on every proper type up
to a degree and on its whole lineage to the root: monotonicity of
``d - m1``, admissibility of seeds drawn from the tail, bounds on degree
and seedbed growth along runs of *-seeds, and constraints on the regime of
the first multiplicity.
"""

from homaloidal import format_type, lineage_to_root, parse_type
from homaloidal.lemmas import audit_lineage, property_suite

result = property_suite(20)
print(f"{result.types_checked} types in {result.runtime_s:.1f} s")
for line in result.summary():
    print("  ", line)

###############################################################################
# A single audit keeps one record per step.
audit = audit_lineage(lineage_to_root(parse_type("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)")))
for rec, t in zip(audit.steps, audit.lineage.types):
    regime = rec.regime.value if rec.regime else "-"
    print(f"{format_type(t):<45} change {rec.change:3d}  star {rec.star!s:<5}  {regime:<8} s={rec.seedbed}")
print("violations:", audit.violations)
