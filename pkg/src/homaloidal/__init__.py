"""Homaloidal types of plane Cremona maps, organised by the Hudson tree."""

from .core import (
    ROOT,
    HomaloidalCandidate,
    Regime,
    TypeSyntaxError,
    blocks,
    dimension,
    format_type,
    noether_status,
    parse_type,
    regime,
    seedbed,
    tail,
)
from .enumeration import CountReport, count_by_filter, count_by_tree, enumerate_types, histogram
from .tree import (
    InadmissibleSeedError,
    InvariantError,
    Lineage,
    NotProperError,
    Outcome,
    SeedTriple,
    apply_seed_sequence,
    child,
    children,
    hudson_test,
    is_admissible,
    is_proper,
    lineage_to_root,
    parent,
)

__version__ = "0.1.0"
