"""Explicit families of homaloidal types with large seedbed or many descendants.

Every construction records the bounds it is supposed to satisfy next to the
observed values, and checks each birth for admissibility as it goes.
Python integers are unbounded, so the huge degrees reached by
:func:`build_yN` are exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .core import HomaloidalCandidate, blocks, format_type, seedbed
from .tree import InvariantError, Lineage, apply_seed_sequence, hudson_test, parent

MAX_YN = 9


@dataclass
class Claim:
    name: str
    bound: int | str
    observed: int | str
    holds: bool


@dataclass
class ConstructionResult:
    final: HomaloidalCandidate
    lineage: Lineage
    claims: list[Claim] = field(default_factory=list)
    label: str = ""

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.claims)

    def claim(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "final": format_type(self.final),
            "degree": str(self.final.degree),
            "seedbed": seedbed(self.final),
            "lineage": {
                "types": [format_type(t) for t in self.lineage.types],
                "seeds": [[str(v) for v in s.values] for s in self.lineage.seeds],
            },
            "claims": [
                {"name": c.name, "bound": str(c.bound), "observed": str(c.observed), "holds": c.holds}
                for c in self.claims
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _join(first: Lineage, second: Lineage) -> Lineage:
    if first.last != second.types[0]:
        raise InvariantError("lineages do not connect")
    return Lineage(first.types + second.types[1:], first.seeds + second.seeds)


def jonquieres(d: int) -> HomaloidalCandidate:
    """The de Jonquières type ``(d; d-1, 1^(2d-2))``."""
    if d < 2:
        raise ValueError("de Jonquières types need degree >= 2")
    return HomaloidalCandidate.from_values(d, [d - 1] + [1] * (2 * d - 2))


def uniform_prefix(t: HomaloidalCandidate) -> Lineage:
    """Seeds ``(0,0,0), (0,0,0), (d,d,d)``; the end has all of ``t`` in its tail."""
    d = t.degree
    return apply_seed_sequence(t, [(0, 0, 0), (0, 0, 0), (d, d, d)])


def power_set_descendants(t: HomaloidalCandidate, s: int) -> list[ConstructionResult]:
    """``2^s`` distinct descendants of ``t``, one per subset of its ``s`` largest values.

    For a subset ``E`` the chosen values (plus a 0 if ``|E|`` is odd) are
    paired in decreasing order and applied as *-seeds after the uniform
    prefix.  Raises :class:`InvariantError` if two results coincide.
    """
    distinct = sorted(set(t.multiplicities), reverse=True)
    if not 0 <= s <= len(distinct):
        raise ValueError(f"s={s} exceeds the seedbed {len(distinct)} of {format_type(t)}")
    d = t.degree
    top = distinct[:s]
    prefix = uniform_prefix(t)
    x4 = prefix.last
    out = []
    for size in range(s + 1):
        for subset in combinations(top, size):
            chosen = list(subset) + ([0] if size % 2 else [])
            seq = _star_walk(x4, list(zip(chosen[0::2], chosen[1::2])))
            lineage = _join(prefix, seq)
            cur = lineage.last
            recovered = _recover_pairs(cur, x4)
            res = ConstructionResult(cur, lineage, label=f"E={list(subset)}")
            res.claims += [
                Claim("degree <= (5s+10)/3 d", f"{(5 * s + 10) * d}/3", cur.degree,
                      3 * cur.degree <= (5 * s + 10) * d),
                # the run x_4..y(E) has n+1 types, which gives this weaker bound
                Claim("degree <= (5s+20)/3 d", f"{(5 * s + 20) * d}/3", cur.degree,
                      3 * cur.degree <= (5 * s + 20) * d),
                Claim("proper", "Proper", hudson_test(cur).outcome.value, hudson_test(cur).proper),
                Claim("ascending lineage recovers E", str(sorted(subset, reverse=True)),
                      str(recovered), recovered == sorted(subset, reverse=True)),
            ]
            out.append(res)
    finals = [r.final for r in out]
    if len(set(finals)) != len(finals):
        raise InvariantError("descendants for different subsets coincide")
    return out


def _star_walk(start: HomaloidalCandidate, pairs) -> Lineage:
    """Apply ``(*, a, b)`` for each pair, filling in the current first multiplicity."""
    lineage = Lineage((start,), ())
    for a, b in pairs:
        step = apply_seed_sequence(lineage.last, [(lineage.last.m(1), a, b)])
        lineage = _join(lineage, step)
    return lineage


def _recover_pairs(y: HomaloidalCandidate, stop: HomaloidalCandidate) -> list[int]:
    """Walk up from ``y`` to ``stop`` and return the non-zero lower seed values."""
    values = []
    cur = y
    while cur != stop:
        if cur.degree <= stop.degree:
            raise InvariantError(f"{format_type(stop)} is not an ancestor of {format_type(y)}")
        cur, seed = parent(cur)
        values = [v for v in seed.values[1:] if v] + values
    return values


def split_blocks(t: HomaloidalCandidate, block_values, k: int) -> ConstructionResult:
    """Split ``n`` blocks of width ``>= 2^k`` into ``2n`` blocks of width ``>= 2^(k-1)``.

    After the uniform prefix each value ``mu`` (in decreasing order) is used as
    the *-seed ``(*, mu, mu)`` exactly ``2^(k-2)`` times.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    mus = sorted(block_values, reverse=True)
    n = len(mus)
    if n < 1 or len(set(mus)) != n:
        raise ValueError("block values must be distinct and non-empty")
    widths = {b.value: b.width for b in blocks(t)}
    for mu in mus:
        if widths.get(mu, 0) < 2 ** k:
            raise ValueError(f"block {mu} of {format_type(t)} has width < 2^{k}")
    d = t.degree
    lineage = uniform_prefix(t)
    reps = 2 ** (k - 2)
    nablas_ok = True
    for mu in mus:
        for _ in range(reps):
            cur = lineage.last
            lineage = _join(lineage, apply_seed_sequence(cur, [(cur.m(1), mu, mu)]))
            nablas_ok &= lineage.seeds[-1].nabla == 3 * d - 2 * mu
    final = lineage.last
    wide = [b for b in blocks(final) if b.width >= 2 ** (k - 1)]
    new_values = [3 * d - mu for mu in mus]
    fw = {b.value: b.width for b in blocks(final)}
    res = ConstructionResult(final, lineage, label=f"split n={n} k={k}")
    res.claims += [
        Claim("blocks of width >= 2^(k-1)", 2 * n, len(wide), len(wide) >= 2 * n),
        Claim("degree <= 5 n 2^k d", 5 * n * 2 ** k * d, final.degree,
              final.degree <= 5 * n * 2 ** k * d),
        Claim("nabla = 3d - 2 mu on every step", "constant", str(nablas_ok), nablas_ok),
        Claim("new blocks 3d - mu", str(new_values),
              str([fw.get(v, 0) for v in new_values]),
              all(fw.get(v, 0) >= 2 ** (k - 1) for v in new_values)
              and all(fw.get(mu, 0) >= 2 ** (k - 1) for mu in mus)
              and min(new_values) > d > max(mus)),
    ]
    return res


def build_yN(N: int) -> ConstructionResult:
    """Type of degree ``<= 2^(N^2) 10^N`` and seedbed ``>= 2^(N-1)``.

    Starts from the de Jonquières type of degree ``2^(N-1)+1`` and splits
    blocks ``N-1`` times with ``n = 2^i`` and ``k = N-i``.  In each round
    the ``n`` largest values among the blocks of width ``>= 2^k`` are split.
    """
    if not 1 <= N <= MAX_YN:
        raise ValueError(f"N must be in [1, {MAX_YN}]")
    start = jonquieres(2 ** (N - 1) + 1)
    lineage = Lineage((start,), ())
    for i in range(N - 1):
        n, k = 2 ** i, N - i
        cur = lineage.last
        eligible = [b.value for b in blocks(cur) if b.width >= 2 ** k]
        if len(eligible) < n:
            raise InvariantError(f"round {i}: only {len(eligible)} blocks of width >= 2^{k}")
        step = split_blocks(cur, eligible[:n], k)
        if not step.ok:
            raise InvariantError(f"round {i}: {[c for c in step.claims if not c.holds]}")
        lineage = _join(lineage, step.lineage)
    y = lineage.last
    verdict = hudson_test(y)
    res = ConstructionResult(y, lineage, label=f"y_{N}")
    res.claims += [
        Claim("seedbed >= 2^(N-1)", 2 ** (N - 1), seedbed(y), seedbed(y) >= 2 ** (N - 1)),
        Claim("degree <= 2^(N^2) 10^N", 2 ** (N * N) * 10 ** N, y.degree,
              y.degree <= 2 ** (N * N) * 10 ** N),
        Claim("proper", "Proper", verdict.outcome.value, verdict.proper),
    ]
    return res

