"""Hudson's test and the Hudson tree: parents, seeds, children, lineages."""

from __future__ import annotations

import enum
from bisect import insort
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import ROOT, HomaloidalCandidate, format_type, noether_status, tail

# at most three zeros can take part in a seed
ZERO_PAD = 3


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class InadmissibleSeedError(ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"step {index}: {message}")
        self.index = index


class NotProperError(ValueError):
    pass


@dataclass(frozen=True)
class SeedTriple:
    """Value triple of a seed together with its increment and *-flag.

    ``nabla`` and ``star`` are relative to the type the seed is applied to.
    """

    values: tuple[int, int, int]
    nabla: int
    star: bool

    def __str__(self) -> str:
        v = ",".join(map(str, self.values))
        return f"({v}) nabla={self.nabla}{' *' if self.star else ''}"


class Outcome(enum.Enum):
    PROPER = "Proper"
    IMPROPER = "Improper"
    NOT_NOETHER = "NotNoether"


@dataclass(frozen=True)
class TestVerdict:
    __test__ = False  # not a pytest class

    outcome: Outcome
    steps: int
    trace: tuple[HomaloidalCandidate, ...] | None = None
    # last step reached before a negative entry appeared, for improper inputs
    negative_values: tuple[int, ...] | None = None

    @property
    def proper(self) -> bool:
        return self.outcome is Outcome.PROPER


@dataclass(frozen=True)
class Lineage:
    """Descending lineage: ``seeds[n]`` applied to ``types[n]`` gives ``types[n+1]``."""

    types: tuple[HomaloidalCandidate, ...]
    seeds: tuple[SeedTriple, ...] = field(default=())

    def __post_init__(self):
        if len(self.seeds) != len(self.types) - 1:
            raise ValueError("a lineage needs exactly one seed per edge")

    def __len__(self) -> int:
        return len(self.types)

    @property
    def last(self) -> HomaloidalCandidate:
        return self.types[-1]


# --- Hudson's test ---------------------------------------------------------

def hudson_test(t: HomaloidalCandidate, want_trace: bool = False) -> TestVerdict:
    """Decide whether a candidate is a proper homaloidal type."""
    if not noether_status(t).satisfies_ne:
        return TestVerdict(Outcome.NOT_NOETHER, 0, (t,) if want_trace else None)
    d = t.degree
    asc = sorted(t.multiplicities)  # ascending so the three largest pop cheaply
    trace = [t] if want_trace else None
    steps = 0
    while d > 1:
        top = [asc.pop() if asc else 0 for _ in range(3)]
        delta = sum(top) - d
        if delta <= 0:
            raise InvariantError(f"non-positive Hudson decrement {delta} on a Noether solution")
        d -= delta
        steps += 1
        lowered = [v - delta for v in top]
        if min(lowered) < 0:
            neg = tuple(sorted(asc + lowered, reverse=True))
            return TestVerdict(Outcome.IMPROPER, steps, tuple(trace) if trace is not None else None,
                               negative_values=neg)
        for v in lowered:
            if v:
                insort(asc, v)
        if trace is not None:
            trace.append(HomaloidalCandidate(d, tuple(reversed(asc))))
    if asc:
        raise InvariantError("reached degree 1 with non-zero multiplicities")
    return TestVerdict(Outcome.PROPER, steps, tuple(trace) if trace is not None else None)


def is_proper(t: HomaloidalCandidate) -> bool:
    return hudson_test(t).proper


def delta(t: HomaloidalCandidate) -> int:
    """Degree drop ``m_1 + m_2 + m_3 - d`` from ``t`` to its parent."""
    if t.degree < 2:
        raise ValueError("degree 1 has no parent")
    return t.m(1) + t.m(2) + t.m(3) - t.degree


def parent(t: HomaloidalCandidate) -> tuple[HomaloidalCandidate, SeedTriple]:
    """One Hudson step; returns the parent and the canonical seed of ``t`` in it.

    Properness of ``t`` is the caller's responsibility; a step producing a
    negative multiplicity raises :class:`NotProperError`.
    """
    dl = delta(t)
    if dl < 1:
        raise NotProperError(f"{format_type(t)} violates the Noether inequality")
    m = t.multiplicities
    lowered = sorted((v - dl for v in t.padded(3)[:3]), reverse=True)
    if lowered[-1] < 0:
        raise NotProperError(f"{format_type(t)} is not a proper homaloidal type")
    p = HomaloidalCandidate.from_values(t.degree - dl, list(m[3:]) + lowered)
    seed = SeedTriple((lowered[0], lowered[1], lowered[2]), dl, lowered[0] == p.m(1))
    return p, seed


# --- seeds and children ----------------------------------------------------

def _blocks_with_zeros(t: HomaloidalCandidate) -> list[list[int]]:
    out: list[list[int]] = []
    for v in t.multiplicities:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    out.append([0, ZERO_PAD])
    return out


def _largest_unused(blocks: list[list[int]], used: dict[int, int]) -> int:
    for i, (v, w) in enumerate(blocks):
        if w > used.get(i, 0):
            return v
    return 0


def _locate(blocks: list[list[int]], triple: Sequence[int]) -> dict[int, int]:
    """Block usage of a value triple, or raise if it is not a sub-multiset."""
    index = {v: i for i, (v, _) in enumerate(blocks)}
    used: dict[int, int] = {}
    for v in triple:
        i = index.get(v)
        if i is None or used.get(i, 0) >= blocks[i][1]:
            raise InadmissibleSeedError(f"value {v} not available in the type")
        used[i] = used.get(i, 0) + 1
    return used


def _normalize_triple(triple: Iterable[int]) -> tuple[int, int, int]:
    vals = tuple(sorted(triple, reverse=True))
    if len(vals) != 3:
        raise ValueError("a seed has exactly three values")
    if vals[-1] < 0:
        raise ValueError("seed values must be non-negative")
    return vals  # type: ignore[return-value]


def is_admissible(t: HomaloidalCandidate, triple: Iterable[int]) -> bool:
    """Whether the value triple is a seed of ``t``.

    Raises :class:`InadmissibleSeedError` if the triple is not drawn from the
    zero-padded multiset of ``t``.
    """
    a, b, c = _normalize_triple(triple)
    blocks = _blocks_with_zeros(t)
    used = _locate(blocks, (a, b, c))
    nabla = t.degree - a - b - c
    return nabla >= 1 and t.degree - a - b >= _largest_unused(blocks, used)


def _birth(t: HomaloidalCandidate, triple: tuple[int, int, int], nabla: int) -> HomaloidalCandidate:
    rest = list(t.multiplicities)
    for v in triple:
        if v:
            rest.remove(v)
    return HomaloidalCandidate.from_values(t.degree + nabla, rest + [v + nabla for v in triple])


def child(t: HomaloidalCandidate, triple: Iterable[int]) -> HomaloidalCandidate:
    vals = _normalize_triple(triple)
    if not is_admissible(t, vals):
        raise InadmissibleSeedError(f"{vals} is not a seed of {format_type(t)}")
    return _birth(t, vals, t.degree - sum(vals))


def seed_of(t: HomaloidalCandidate, triple: Iterable[int]) -> SeedTriple:
    vals = _normalize_triple(triple)
    return SeedTriple(vals, t.degree - sum(vals), vals[0] == t.m(1))


def children(
    t: HomaloidalCandidate, max_degree: int | None = None
) -> list[tuple[SeedTriple, HomaloidalCandidate]]:
    """All children of ``t``, one per distinct admissible value triple.

    With ``max_degree``, children of larger degree are skipped.
    """
    d = t.degree
    cap = d if max_degree is None else min(d, max_degree - d)
    if cap < 1:
        return []
    lo = d - cap  # smallest allowed v1 + v2 + v3
    blocks = _blocks_with_zeros(t)
    nb = len(blocks)
    m1 = t.m(1)
    out = []
    for ia in range(nb):
        a = blocks[ia][0]
        if 3 * a < lo:
            break
        used = {ia: 1}
        for ib in range(ia, nb):
            b, wb = blocks[ib]
            if used.get(ib, 0) >= wb:
                continue
            if a + 2 * b < lo:
                break
            used[ib] = used.get(ib, 0) + 1
            for ic in range(ib, nb):
                c, wc = blocks[ic]
                if used.get(ic, 0) >= wc:
                    continue
                s = a + b + c
                if s < lo:
                    break
                if s > d - 1:
                    continue
                used[ic] = used.get(ic, 0) + 1
                if d - a - b >= _largest_unused(blocks, used):
                    nabla = d - s
                    out.append((SeedTriple((a, b, c), nabla, a == m1), _birth(t, (a, b, c), nabla)))
                used[ic] -= 1
            used[ib] -= 1
    return out


# --- lineages --------------------------------------------------------------

def lineage_to_root(t: HomaloidalCandidate) -> Lineage:
    """Chain of successive parents from ``t`` up to ``(1;0)``, root first."""
    if not is_proper(t):
        raise NotProperError(f"{format_type(t)} is not a proper homaloidal type")
    types = [t]
    seeds = []
    while types[-1].degree > 1:
        p, s = parent(types[-1])
        types.append(p)
        seeds.append(s)
    return Lineage(tuple(reversed(types)), tuple(reversed(seeds)))


def apply_seed_sequence(t: HomaloidalCandidate, triples: Iterable[Iterable[int]]) -> Lineage:
    """Descend from ``t`` along the given seeds; fails at the first bad one."""
    types = [t]
    seeds = []
    for n, triple in enumerate(triples):
        cur = types[-1]
        try:
            vals = _normalize_triple(triple)
            ok = is_admissible(cur, vals)
        except (InadmissibleSeedError, ValueError) as exc:
            raise InadmissibleSeedError(str(exc), n) from None
        if not ok:
            raise InadmissibleSeedError(f"{vals} is not a seed of {format_type(cur)}", n)
        seeds.append(seed_of(cur, vals))
        types.append(_birth(cur, vals, seeds[-1].nabla))
    return Lineage(tuple(types), tuple(seeds))


def star_descendant_sequences(t: HomaloidalCandidate) -> list[list[SeedTriple]]:
    """Sequences of successive *-seeds from ``t`` drawing on its tail.

    Each sequence lists the *-seeds with a non-zero lower value; it is
    implicitly continued by the forced ``(*,0,0)`` seeds, which are not
    expanded.  The sequence that is ``(*,0,0)`` from the start is ``[]``.
    """
    if t.degree < 2:
        raise ValueError("degree 1 has no tail")
    results: list[list[SeedTriple]] = []

    def walk(cur: HomaloidalCandidate, pool: tuple[int, ...], prefix: list[SeedTriple]):
        results.append(prefix)
        values = pool + (0, 0)
        seen = set()
        for p in range(len(values)):
            a = values[p]
            for q in range(p + 1, len(values)):
                b = values[q]
                if (a, b) in seen or (a, b) == (0, 0):
                    continue
                seen.add((a, b))
                triple = (cur.m(1), a, b)
                if not is_admissible(cur, triple):
                    raise InvariantError(f"tail pair {(a, b)} is not a *-seed of {format_type(cur)}")
                seed = seed_of(cur, triple)
                walk(_birth(cur, seed.values, seed.nabla), pool[q + 1:] if b else (), prefix + [seed])

    walk(t, tail(t), [])
    return results


__all__ = [
    "ROOT", "InvariantError", "InadmissibleSeedError", "NotProperError", "SeedTriple",
    "Outcome", "TestVerdict", "Lineage", "hudson_test", "is_proper", "delta", "parent",
    "is_admissible", "child", "seed_of", "children", "lineage_to_root",
    "apply_seed_sequence", "star_descendant_sequences",
]
