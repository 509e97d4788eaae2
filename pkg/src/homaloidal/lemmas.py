"""Executable checks of the inequalities satisfied by homaloidal types and lineages.

Every check returns a list of violation messages; an empty list means the
property held.  :func:`property_suite` runs them over all proper types up to
a degree and over each type's lineage to the root.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .core import HomaloidalCandidate, Regime, format_type, noether_status, regime, seedbed, tail
from .enumeration import enumerate_types
from .tree import (
    Lineage,
    child,
    children,
    delta,
    is_admissible,
    lineage_to_root,
    parent,
)

LEMMAS = (
    "noether", "low_bou_m2m3", "3first", "dmm1", "lonely", "admissible12", "decreasing",
    "degree_along_t1", "s_bound_t1", "successive", "largefirst", "smallmult", "seqsmall",
    "round_trip",
)


def seed_indices(p: HomaloidalCandidate, values: Sequence[int]) -> tuple[int, int, int]:
    """1-based minimal indices ``(i, j, k)`` of a seed's values in ``p`` padded with zeros."""
    padded = p.padded(p.r + 3)
    idx = []
    start = 0
    for v in values:
        pos = padded.index(v, start)
        idx.append(pos + 1)
        start = pos + 1
    return idx[0], idx[1], idx[2]


def _star_triples(t: HomaloidalCandidate) -> list[tuple[int, int, int]]:
    """Distinct triples ``(m_1, v2, v3)`` drawable from the zero-padded multiset."""
    rest = t.padded(t.r + 3)[1:]
    seen = {}
    for a in range(len(rest)):
        for b in range(a + 1, len(rest)):
            seen.setdefault((rest[a], rest[b]), None)
    return [(t.m(1),) + pair for pair in seen]


def _fits(pool: Sequence[int], values: Sequence[int]) -> bool:
    have = Counter(pool)
    have[0] += 3
    need = Counter(values)
    return all(have[v] >= c for v, c in need.items())


def check_type(t: HomaloidalCandidate) -> dict[str, list[str]]:
    """Per-type properties of a proper type of degree ``>= 2``."""
    out: dict[str, list[str]] = {name: [] for name in LEMMAS}
    name = format_type(t)
    d = t.degree
    m1, m2, m3 = t.m(1), t.m(2), t.m(3)

    ne = noether_status(t)
    if not ne.satisfies_ne:
        out["noether"].append(f"{name}: Noether defects {ne}")
    if m1 + m2 + m3 < d + 1:
        out["noether"].append(f"{name}: m1+m2+m3 < d+1")
    if not 3 * m1 > d:
        out["noether"].append(f"{name}: 3 m1 <= d")

    if m1 + m2 > d:
        out["low_bou_m2m3"].append(f"{name}: m1+m2 > d")
    if not m1 + 2 * m3 > d:
        out["low_bou_m2m3"].append(f"{name}: m1+2m3 <= d")
    if (3 * d - 3 - m1) * m2 < d * d - 1 - m1 * m1:
        out["low_bou_m2m3"].append(f"{name}: m2 below (d^2-1-m1^2)/(3d-3-m1)")

    p, seed = parent(t)
    if seed.nabla != delta(t) or child(p, seed.values) != t:
        out["round_trip"].append(f"{name}: child(parent(x)) != x")
    i, j, k = seed_indices(p, seed.values)
    # both statements concern seeds of a type of degree >= 2, not of (1;0)
    if p.degree >= 2 and j <= 3:
        out["3first"].append(f"{name}: seed {seed.values} in {format_type(p)} has j={j}")
    if p.degree >= 2 and seed.star and not m1 > m2:
        out["lonely"].append(f"{name}: born from a *-seed but m1 = m2")

    for s, c in children(t):
        back, bseed = parent(c)
        if back != t or bseed.values != s.values:
            out["round_trip"].append(f"{name}: parent(child {s.values}) does not round-trip")

    threshold = d - m1 - m2
    if seed.values[2] != threshold:
        out["decreasing"].append(f"{name}: seed third value {seed.values[2]} != d-m1-m2")
    pp = p.padded(p.r + 3)
    if tuple(v for v in pp[k:] if v) != tail(t):
        out["decreasing"].append(f"{name}: tail != parent multiplicities after index k={k}")
    tl = tail(t)
    for triple in _star_triples(t):
        _, v2, v3 = triple
        ok = is_admissible(t, triple)
        if ok != (v2 <= threshold):
            out["admissible12"].append(f"{name}: (*,{v2},{v3}) admissible={ok}")
        from_tail = _fits(tl, (v2, v3))
        if ok != (seed.values[2] >= v2) or ok != from_tail:
            out["decreasing"].append(f"{name}: (*,{v2},{v3}) admissible={ok} tail-drawn={from_tail}")
        if ok:
            c = child(t, triple)
            if v3 == 0:
                expect = ()
            else:
                pos = tl.index(v3, tl.index(v2) + 1 if v2 == v3 else 0)
                expect = tl[pos + 1:]
            if tail(c) != expect:
                out["decreasing"].append(
                    f"{name}: tail after (*,{v2},{v3}) is {tail(c)}, expected {expect}")
    return out


@dataclass
class StepRecord:
    degree: int
    change: int  # nabla of the seed that produced this type (0 for the first)
    star: bool | None
    regime: Regime | None
    seedbed: int


@dataclass
class LineageAudit:
    lineage: Lineage
    steps: list[StepRecord] = field(default_factory=list)
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _runs(flags: Sequence[bool]) -> list[tuple[int, int]]:
    """Maximal ``[start, stop)`` runs of True."""
    runs, start = [], None
    for n, f in enumerate(list(flags) + [False]):
        if f and start is None:
            start = n
        elif not f and start is not None:
            runs.append((start, n))
            start = None
    return runs


def audit_lineage(lineage: Lineage) -> LineageAudit:
    """Check the inequalities that constrain consecutive births along a lineage."""
    types, seeds = lineage.types, lineage.seeds
    audit = LineageAudit(lineage)
    bad = audit.violations
    reg = [regime(t) if t.degree >= 2 else None for t in types]
    sb = [seedbed(t) for t in types]
    for n, t in enumerate(types):
        s = seeds[n - 1] if n else None
        audit.steps.append(StepRecord(t.degree, s.nabla if s else 0, s.star if s else None, reg[n], sb[n]))

    def where(n):
        return f"{format_type(types[n])} (step {n})"

    for n, s in enumerate(seeds):
        x, y = types[n], types[n + 1]
        before, after = x.degree - x.m(1), y.degree - y.m(1)
        if after < before or (after == before) != s.star:
            bad.append(("dmm1", f"{where(n + 1)}: d-m1 {before} -> {after}, star={s.star}"))
        if reg[n + 1] is Regime.LARGE:
            if not s.star:
                bad.append(("largefirst", f"{where(n + 1)}: large but born from a non-*-seed"))
            if reg[n] is Regime.SMALL:
                bad.append(("largefirst", f"{where(n + 1)}: large with a small parent"))
        if reg[n + 1] is Regime.SMALL:
            k = seed_indices(x, s.values)[2]
            if k > 11:
                bad.append(("smallmult", f"{where(n + 1)}: small but seed index k={k}"))
            if reg[n] is Regime.LARGE:
                bad.append(("smallmult", f"{where(n + 1)}: small with a large parent"))

    for n in range(len(seeds) - 1):
        s1, s2 = seeds[n], seeds[n + 1]
        if (types[n].degree >= 2 and s1.star and s2.star and s1.values[1] == s1.values[2]
                and s2.values[1:] == s1.values[1:] and sb[n + 2] > sb[n + 1]):
            bad.append(("successive", f"{where(n + 2)}: repeated (*,mu,mu) raised the seedbed"))

    for a0, b0 in _runs([s.star for s in seeds]):
        # seeds a..b-1 are *-seeds: types a..b form a *-lineage
        for a in range(a0, b0):
            x1 = types[a]
            if x1.degree < 2:
                continue
            for b in range(a + 1, b0 + 1):
                ell = b - a + 1
                xl = types[b]
                if sb[b] > min(4 * sb[a] - 1, sb[a] + 3 * (ell - 1)):
                    bad.append(("s_bound_t1", f"{where(b)}: s={sb[b]} from s={sb[a]} over {ell}"))
                if 3 * xl.degree > (2 * ell + 1) * x1.degree:
                    bad.append(("degree_along_t1", f"{where(b)}: degree above (2l+1)/3 d"))
                if 6 * x1.m(1) <= 5 * x1.degree and 6 * xl.degree < max(ell - 13, 6) * x1.degree:
                    bad.append(("degree_along_t1", f"{where(b)}: degree below max((l-13)/6,1) d"))

    for a0, b0 in _runs([r is Regime.SMALL for r in reg]):
        for a in range(a0, b0):
            if a == 0:
                anchor = seedbed(parent(types[0])[0])
            else:
                anchor = sb[a - 1]
            for b in range(a, b0):
                if sb[b] > anchor + 11:
                    bad.append(("seqsmall", f"{where(b)}: seedbed {sb[b]} > {anchor}+11"))
    return audit


@dataclass
class SuiteResult:
    max_degree: int
    types_checked: int
    violations: dict[str, list[str]]
    runtime_s: float

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def summary(self) -> list[str]:
        return [f"{name}: {'ok' if not v else f'{len(v)} violations'}"
                for name, v in self.violations.items()]


def property_suite(max_degree: int) -> SuiteResult:
    """All per-type and lineage checks over every proper type of degree <= max_degree."""
    start = time.perf_counter()
    found: dict[str, list[str]] = {name: [] for name in LEMMAS}
    count = 0

    def visit(t: HomaloidalCandidate):
        nonlocal count
        count += 1
        if t.degree < 2:
            return
        for name, msgs in check_type(t).items():
            found[name].extend(msgs)
        for name, msg in audit_lineage(lineage_to_root(t)).violations:
            found[name].append(msg)

    enumerate_types(max_degree, visit)
    return SuiteResult(max_degree, count, found, time.perf_counter() - start)

