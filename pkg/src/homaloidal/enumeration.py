"""Exact counts of proper homaloidal types of bounded degree.

Two independent routes:

* :func:`count_by_tree` walks the Hudson tree from ``(1;0)`` with a
  compiled kernel, splitting the tree at a frontier degree into subtree
  tasks that may run on several worker processes and can be checkpointed.
* :func:`count_by_filter` lists every non-increasing solution of the
  Noether equalities by recursive descent and keeps those passing Hudson's
  test.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernel
from .core import ROOT, HomaloidalCandidate, blocks, seedbed
from .tree import InvariantError, children, hudson_test

log = logging.getLogger(__name__)

DEFAULT_FRONTIER = 8
HISTOGRAM_KINDS = ("m1m2", "m1m3", "dim")


@dataclass
class CountReport:
    max_degree: int
    method: str
    counts: dict[int, int]
    seedbed_max: dict[int, int] = field(default_factory=dict)
    solutions: dict[int, int] | None = None
    workers: int = 1
    runtime_ms: float = 0.0
    histograms: dict[int, dict[str, "Histogram2D | Histogram1D"]] = field(default_factory=dict)

    def n(self, d: int) -> int:
        return self.counts[d]

    def to_json(self) -> dict:
        rows = []
        for d in range(1, self.max_degree + 1):
            row = {"d": d, "N_d": str(self.counts[d])}
            if self.solutions is not None and d in self.solutions:
                row["S_d"] = str(self.solutions[d])
            if d in self.seedbed_max:
                row["s_d"] = str(self.seedbed_max[d])
            rows.append(row)
        return {
            "max_degree": self.max_degree,
            "method": self.method,
            "counts": rows,
            "runtime_ms": round(self.runtime_ms, 3),
            "workers": self.workers,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "CountReport":
        counts, seedbeds, sols = {}, {}, {}
        for row in payload["counts"]:
            d = int(row["d"])
            counts[d] = int(row["N_d"])
            if "s_d" in row:
                seedbeds[d] = int(row["s_d"])
            if "S_d" in row:
                sols[d] = int(row["S_d"])
        return cls(
            max_degree=int(payload["max_degree"]),
            method=payload["method"],
            counts=counts,
            seedbed_max=seedbeds,
            solutions=sols or None,
            workers=int(payload.get("workers", 1)),
            runtime_ms=float(payload.get("runtime_ms", 0.0)),
        )

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")

    def write_csv(self, path: str | Path) -> None:
        lines = ["degree,N_d"] + [f"{d},{self.counts[d]}" for d in sorted(self.counts)]
        Path(path).write_text("\n".join(lines) + "\n")


@dataclass
class Histogram2D:
    degree: int
    axes: tuple[str, str]
    grid: np.ndarray  # grid[x, y] = number of types with those coordinates

    @property
    def total(self) -> int:
        return int(self.grid.sum())

    def occupied(self) -> list[tuple[int, int, int]]:
        xs, ys = np.nonzero(self.grid)
        return [(int(x), int(y), int(self.grid[x, y])) for x, y in zip(xs, ys)]

    def to_csv(self) -> str:
        rows = ["x,y,count"] + [f"{x},{y},{c}" for x, y, c in self.occupied()]
        return "\n".join(rows) + "\n"


@dataclass
class Histogram1D:
    degree: int
    kind: str
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_csv(self) -> str:
        rows = ["m,count"] + [f"{m},{c}" for m, c in sorted(self.counts.items())]
        return "\n".join(rows) + "\n"


# --- tree traversal --------------------------------------------------------

def _as_blocks(t: HomaloidalCandidate) -> tuple[np.ndarray, np.ndarray]:
    bl = blocks(t)
    return (np.array([b.value for b in bl], dtype=np.int64),
            np.array([b.width for b in bl], dtype=np.int64))


@dataclass
class _Partial:
    counts: np.ndarray
    smax: np.ndarray
    h12: np.ndarray
    h13: np.ndarray
    hdim: np.ndarray
    bad: int = 0

    @classmethod
    def empty(cls, max_degree: int, n_hist: int) -> "_Partial":
        side = max_degree + 1 if n_hist else 1
        return cls(
            np.zeros(max_degree + 1, dtype=np.int64),
            np.zeros(max_degree + 1, dtype=np.int64),
            np.zeros((n_hist, side, side), dtype=np.int64),
            np.zeros((n_hist, side, side), dtype=np.int64),
            np.zeros((n_hist, 8 + 6 * max_degree + 1 if n_hist else 1), dtype=np.int64),
        )

    def merge(self, other: "_Partial") -> None:
        self.counts += other.counts
        np.maximum(self.smax, other.smax, out=self.smax)
        self.h12 += other.h12
        self.h13 += other.h13
        self.hdim += other.hdim
        self.bad += other.bad


def _run_subtree(root: HomaloidalCandidate, max_degree: int, hist_degrees: Sequence[int],
                 sample_every: int) -> _Partial:
    part = _Partial.empty(max_degree, len(hist_degrees))
    slots = np.full(max_degree + 1, -1, dtype=np.int64)
    for i, d in enumerate(hist_degrees):
        slots[d] = i
    vals, cnts = _as_blocks(root)
    part.bad = int(_kernel.traverse(
        root.degree, vals, cnts, max_degree, _kernel.block_capacity(max_degree),
        part.counts, part.smax, slots, part.h12, part.h13, part.hdim, sample_every,
    ))
    return part


def frontier_tasks(max_degree: int, frontier: int) -> list[HomaloidalCandidate]:
    """Roots of the independent subtrees below the frontier degree.

    Each root has degree in ``(frontier, max_degree]`` and a parent of degree
    ``<= frontier``; sorted so that task ids are stable.
    """
    roots = []
    stack = [ROOT]
    while stack:
        t = stack.pop()
        for _, c in children(t, max_degree):
            if c.degree <= frontier:
                stack.append(c)
            else:
                roots.append(c)
    return sorted(roots)


def _worker(args):
    task_id, root, max_degree, hist_degrees, sample_every = args
    return task_id, _run_subtree(root, max_degree, hist_degrees, sample_every)


def _read_checkpoint(path: Path, max_degree: int, frontier: int, n_tasks: int) -> dict[int, _Partial]:
    done: dict[int, _Partial] = {}
    if not path.exists():
        return done
    header = f"# homaloidal checkpoint max_degree={max_degree} frontier={frontier} tasks={n_tasks}"
    with path.open() as fh:
        first = fh.readline().rstrip("\n")
        if first != header:
            raise ValueError(f"checkpoint {path} belongs to a different run: {first!r}")
        for line in fh:
            parts = line.split()
            if not parts or parts[0] != "task":
                continue
            if len(parts) != 2 + 2 * (max_degree + 1) + 1 or parts[2 + max_degree + 1] != "s":
                raise ValueError(f"malformed checkpoint line: {line!r}")
            part = _Partial.empty(max_degree, 0)
            part.counts[:] = [int(x) for x in parts[2:3 + max_degree]]
            part.smax[:] = [int(x) for x in parts[4 + max_degree:]]
            done[int(parts[1])] = part
    return done


def _append_checkpoint(fh, task_id: int, part: _Partial) -> None:
    counts = " ".join(str(int(x)) for x in part.counts)
    smax = " ".join(str(int(x)) for x in part.smax)
    fh.write(f"task {task_id} {counts} s {smax}\n")
    fh.flush()
    os.fsync(fh.fileno())


def count_by_tree(
    max_degree: int,
    workers: int = 1,
    histogram_degrees: Iterable[int] = (),
    checkpoint_path: str | Path | None = None,
    frontier: int = DEFAULT_FRONTIER,
    sample_every: int = 0,
) -> CountReport:
    """Exact ``N_d`` for ``1 <= d <= max_degree`` by exhaustive tree traversal.

    ``sample_every=k`` re-runs Hudson's test on every k-th visited type;
    a failure raises :class:`InvariantError`.  Histograms are accumulated
    for the requested degrees during the same pass.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    start = time.perf_counter()
    hist_degrees = sorted(set(histogram_degrees))
    if any(not 1 <= d <= max_degree for d in hist_degrees):
        raise ValueError("histogram degree outside [1, max_degree]")
    if hist_degrees and checkpoint_path is not None:
        raise ValueError("checkpoints store counts only; request histograms in a separate run")
    frontier = max(1, min(frontier, max_degree))

    # the part of the tree up to the frontier is cheap: do it in one go
    total = _run_subtree(ROOT, frontier, [d for d in hist_degrees if d <= frontier], sample_every)
    total = _pad_partial(total, max_degree, hist_degrees, [d for d in hist_degrees if d <= frontier])

    tasks = frontier_tasks(max_degree, frontier)
    done: dict[int, _Partial] = {}
    ckpt = None
    if checkpoint_path is not None:
        path = Path(checkpoint_path)
        done = _read_checkpoint(path, max_degree, frontier, len(tasks))
        fresh = not path.exists()
        ckpt = path.open("a")
        if fresh:
            ckpt.write(f"# homaloidal checkpoint max_degree={max_degree} frontier={frontier} "
                       f"tasks={len(tasks)}\n")
            ckpt.flush()
        if done:
            log.info("resuming: %d of %d tasks already done", len(done), len(tasks))
    pending = [(i, t, max_degree, hist_degrees, sample_every)
               for i, t in enumerate(tasks) if i not in done]
    try:
        if workers <= 1 or len(pending) <= 1:
            results = map(_worker, pending)
            _consume(results, done, ckpt)
        else:
            ctx = multiprocessing.get_context("fork" if hasattr(os, "fork") else "spawn")
            with ctx.Pool(workers) as pool:
                _consume(pool.imap_unordered(_worker, pending), done, ckpt)
    finally:
        if ckpt is not None:
            ckpt.close()

    for i in sorted(done):
        part = done[i]
        if part.h12.shape[0] == 0 and hist_degrees:
            raise InvariantError("histogram data missing from a task result")
        total.merge(part)
    if total.bad:
        raise InvariantError(f"{total.bad} sampled types failed Hudson's test")

    report = CountReport(
        max_degree=max_degree,
        method="tree",
        counts={d: int(total.counts[d]) for d in range(1, max_degree + 1)},
        seedbed_max={d: int(total.smax[d]) for d in range(1, max_degree + 1)},
        workers=workers,
    )
    for i, d in enumerate(hist_degrees):
        report.histograms[d] = _histograms_from(d, total, i)
    report.runtime_ms = (time.perf_counter() - start) * 1000
    return report


def _consume(results, done: dict[int, _Partial], ckpt) -> None:
    for task_id, part in results:
        done[task_id] = part
        if ckpt is not None:
            _append_checkpoint(ckpt, task_id, part)


def _pad_partial(part: _Partial, max_degree: int, all_hist: Sequence[int],
                 have_hist: Sequence[int]) -> _Partial:
    """Re-shape a partial computed for a smaller max degree."""
    out = _Partial.empty(max_degree, len(all_hist))
    n = part.counts.shape[0]
    out.counts[:n] = part.counts
    out.smax[:n] = part.smax
    out.bad = part.bad
    for j, d in enumerate(have_hist):
        i = list(all_hist).index(d)
        side = part.h12.shape[1]
        out.h12[i, :side, :side] = part.h12[j]
        out.h13[i, :side, :side] = part.h13[j]
        out.hdim[i, :part.hdim.shape[1]] = part.hdim[j]
    return out


def _histograms_from(d: int, part: _Partial, slot: int) -> dict:
    side = d + 1
    dims = part.hdim[slot]
    return {
        "m1m2": Histogram2D(d, ("m1", "m2"), part.h12[slot, :side, :side].copy()),
        "m1m3": Histogram2D(d, ("m1", "m3"), part.h13[slot, :side, :side].copy()),
        "dim": Histogram1D(d, "dimension", {int(m): int(c) for m, c in enumerate(dims) if c}),
    }


def histogram(degree: int, kind: str, workers: int = 1) -> Histogram2D | Histogram1D:
    """Exact histogram over all proper types of exactly ``degree``.

    ``kind`` is ``"m1m2"``, ``"m1m3"`` (raw integer coordinates) or
    ``"dim"`` (dimension ``8 + 2r``).
    """
    if kind not in HISTOGRAM_KINDS:
        raise ValueError(f"unknown histogram kind {kind!r}")
    report = count_by_tree(degree, workers=workers, histogram_degrees=[degree])
    return report.histograms[degree][kind]


# --- generic enumeration ---------------------------------------------------

def enumerate_types(max_degree: int, visitor: Callable[[HomaloidalCandidate], object]) -> None:
    """Call ``visitor`` once per proper type of degree ``<= max_degree``.

    Pure-Python traversal, meant for property checks and small statistics;
    use :func:`count_by_tree` for large degrees.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    stack = [ROOT]
    while stack:
        t = stack.pop()
        visitor(t)
        stack.extend(c for _, c in children(t, max_degree))


def proper_types(max_degree: int) -> list[HomaloidalCandidate]:
    out: list[HomaloidalCandidate] = []
    enumerate_types(max_degree, out.append)
    return sorted(out)


# --- Noether-solution filter ----------------------------------------------

def noether_solutions(degree: int, prune: bool = False):
    """Yield each non-increasing positive solution of the Noether equalities.

    With ``prune``, only solutions with ``m1 + m2 <= d``,
    ``m1 + 2 m3 > d`` and ``(3d-3-m1) m2 >= d^2-1-m1^2`` are produced; every
    proper type satisfies these.
    """
    d = degree
    total_sum, total_sq = 3 * d - 3, d * d - 1
    out: list[int] = []

    def descend(cap: int, s: int, q: int):
        # s, q: remaining sum and square sum; next value v <= cap
        if s == 0:
            if q == 0:
                yield tuple(out)
            return
        # v must satisfy s <= q (all ones) and q <= s * v (all equal to v)
        lo = max(1, -(-q // s))
        for v in range(min(cap, s), lo - 1, -1):
            if v * v > q:
                continue
            s2, q2 = s - v, q - v * v
            if s2 > q2 or (s2 and q2 > s2 * v) or (not s2 and q2):
                continue
            if prune and not _prune_ok(d, out, v):
                continue
            out.append(v)
            yield from descend(v, s2, q2)
            out.pop()

    yield from descend(d - 1, total_sum, total_sq)


def _prune_ok(d: int, prefix: list[int], v: int) -> bool:
    k = len(prefix)
    if k == 1:
        m1, m2 = prefix[0], v
        return m1 + m2 <= d and (3 * d - 3 - m1) * m2 >= d * d - 1 - m1 * m1
    if k == 2:
        return prefix[0] + 2 * v > d
    return True


def count_by_filter(degree: int, prune: bool = False) -> tuple[int | None, int]:
    """``(S_d, N_d)``: Noether solutions and those passing Hudson's test.

    With ``prune`` the enumeration skips solutions that cannot be proper, so
    ``S_d`` is not available and ``None`` is returned in its place.  Degree
    1 gives ``(1, 1)`` by convention.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree == 1:
        return 1, 1
    s = n = 0
    for sol in noether_solutions(degree, prune):
        s += 1
        if hudson_test(HomaloidalCandidate(degree, sol)).proper:
            n += 1
    return (None if prune else s), n


def filter_report(max_degree: int) -> CountReport:
    start = time.perf_counter()
    counts, sols = {}, {}
    smax = {}
    for d in range(1, max_degree + 1):
        if d == 1:
            sols[d], counts[d], smax[d] = 1, 1, 0
            continue
        s = n = best = 0
        for sol in noether_solutions(d):
            s += 1
            t = HomaloidalCandidate(d, sol)
            if hudson_test(t).proper:
                n += 1
                best = max(best, seedbed(t))
        sols[d], counts[d], smax[d] = s, n, best
    return CountReport(max_degree, "filter", counts, smax, sols,
                       runtime_ms=(time.perf_counter() - start) * 1000)

