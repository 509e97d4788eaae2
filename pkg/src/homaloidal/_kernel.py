"""Compiled depth-first traversal of the Hudson tree.

Types are held as blocks (strictly decreasing values with widths) in
per-level rows; the DFS stack holds pending seeds ``(level, a, b, c)``
whose parent sits in row ``level``.  A node's row is only overwritten after
every seed pushed above it has been consumed, so no visited set is needed.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INT = np.int64


def block_capacity(max_degree: int) -> int:
    # s distinct positive values sum to >= s(s+1)/2 and the sum is 3d-3
    s = 1
    while (s + 1) * (s + 2) // 2 <= 3 * max_degree:
        s += 1
    return s + 8


@njit(cache=True)
def _hudson_proper(degree, flat):
    asc = np.sort(flat)
    d = degree
    while d > 1:
        n = asc.shape[0]
        a = asc[n - 1] if n >= 1 else 0
        b = asc[n - 2] if n >= 2 else 0
        c = asc[n - 3] if n >= 3 else 0
        dl = a + b + c - d
        if dl <= 0:
            return False
        d -= dl
        keep = max(n - 3, 0)
        nxt = np.empty(keep + 3, dtype=asc.dtype)
        nxt[:keep] = asc[:keep]
        nxt[keep] = a - dl
        nxt[keep + 1] = b - dl
        nxt[keep + 2] = c - dl
        if nxt[keep:].min() < 0:
            return False
        nxt = np.sort(nxt)
        z = 0
        while z < nxt.shape[0] and nxt[z] == 0:
            z += 1
        asc = nxt[z:]
    return asc.shape[0] == 0


@njit(cache=True)
def _push_children(lvl, vals, cnts, nb, deg, D, stack, sp):
    """Push every admissible seed of the node in row ``lvl``; returns (stack, sp)."""
    d = deg[lvl]
    cap = min(d, D - d)
    if cap < 1:
        return stack, sp
    lo = d - cap
    n = nb[lvl]
    for ia in range(n + 1):
        a = vals[lvl, ia] if ia < n else 0
        if 3 * a < lo:
            break
        for ib in range(ia, n + 1):
            wb = cnts[lvl, ib] if ib < n else 3
            if (ib == ia) and wb < 2:
                continue
            b = vals[lvl, ib] if ib < n else 0
            if a + 2 * b < lo:
                break
            for ic in range(ib, n + 1):
                wc = cnts[lvl, ic] if ic < n else 3
                need = 1 + (ic == ib) + (ic == ia)
                if wc < need:
                    continue
                c = vals[lvl, ic] if ic < n else 0
                s = a + b + c
                if s < lo:
                    break
                if s >= d:
                    continue
                # largest multiplicity left after removing the chosen occurrences
                big = 0
                for i in range(n):
                    used = (i == ia) + (i == ib) + (i == ic)
                    if cnts[lvl, i] > used:
                        big = vals[lvl, i]
                        break
                if d - a - b < big:
                    continue
                if sp + 4 > stack.shape[0]:
                    grown = np.empty(stack.shape[0] * 2, dtype=stack.dtype)
                    grown[:sp] = stack[:sp]
                    stack = grown
                stack[sp] = lvl
                stack[sp + 1] = a
                stack[sp + 2] = b
                stack[sp + 3] = c
                sp += 4
    return stack, sp


@njit(cache=True)
def _make_child(lvl, a, b, c, vals, cnts, nb, deg, rr):
    """Write the child of row ``lvl`` for seed (a, b, c) into row ``lvl + 1``."""
    out = lvl + 1
    d = deg[lvl]
    nabla = d - a - b - c
    deg[out] = d + nabla
    k = 0
    tops = (a + nabla, b + nabla, c + nabla)
    for v in tops:
        if k > 0 and vals[out, k - 1] == v:
            cnts[out, k - 1] += 1
        else:
            vals[out, k] = v
            cnts[out, k] = 1
            k += 1
    for i in range(nb[lvl]):
        v = vals[lvl, i]
        w = cnts[lvl, i]
        if v == a:
            w -= 1
        if v == b:
            w -= 1
        if v == c:
            w -= 1
        if w <= 0:
            continue
        # new values dominate the rest; only the junction can coincide
        if vals[out, k - 1] == v:
            cnts[out, k - 1] += w
        else:
            vals[out, k] = v
            cnts[out, k] = w
            k += 1
    nb[out] = k
    removed = (a > 0) + (b > 0) + (c > 0)
    rr[out] = rr[lvl] - removed + 3


@njit(cache=True)
def _visit(lvl, vals, cnts, nb, deg, rr, counts, smax, hslot, h12, h13, hdim):
    d = deg[lvl]
    counts[d] += 1
    n = nb[lvl]
    if n > smax[d]:
        smax[d] = n
    slot = hslot[d]
    if slot >= 0:
        m = np.zeros(3, dtype=np.int64)
        k = 0
        for i in range(n):
            for _ in range(cnts[lvl, i]):
                if k < 3:
                    m[k] = vals[lvl, i]
                    k += 1
            if k >= 3:
                break
        h12[slot, m[0], m[1]] += 1
        h13[slot, m[0], m[2]] += 1
        hdim[slot, 8 + 2 * rr[lvl]] += 1


@njit(cache=True)
def _flatten(lvl, vals, cnts, nb, rr):
    flat = np.empty(rr[lvl], dtype=np.int64)
    k = 0
    for i in range(nb[lvl]):
        for _ in range(cnts[lvl, i]):
            flat[k] = vals[lvl, i]
            k += 1
    return flat


@njit(cache=True)
def traverse(root_deg, root_vals, root_cnts, D, S, counts, smax, hslot, h12, h13, hdim,
             sample_every):
    """Count every proper type of degree <= D in the subtree rooted at the given type.

    Returns the number of sampled nodes that failed the compiled Hudson
    test (expected 0).
    """
    depth = D + 2
    vals = np.zeros((depth, S), dtype=np.int64)
    cnts = np.zeros((depth, S), dtype=np.int64)
    nb = np.zeros(depth, dtype=np.int64)
    deg = np.zeros(depth, dtype=np.int64)
    rr = np.zeros(depth, dtype=np.int64)
    n0 = root_vals.shape[0]
    for i in range(n0):
        vals[0, i] = root_vals[i]
        cnts[0, i] = root_cnts[i]
        rr[0] += root_cnts[i]
    nb[0] = n0
    deg[0] = root_deg
    bad = 0
    if root_deg > D:
        return bad
    _visit(0, vals, cnts, nb, deg, rr, counts, smax, hslot, h12, h13, hdim)
    stack = np.empty(4096, dtype=np.int64)
    sp = 0
    stack, sp = _push_children(0, vals, cnts, nb, deg, D, stack, sp)
    visited = 0
    while sp > 0:
        sp -= 4
        lvl = stack[sp]
        _make_child(lvl, stack[sp + 1], stack[sp + 2], stack[sp + 3], vals, cnts, nb, deg, rr)
        lvl += 1
        _visit(lvl, vals, cnts, nb, deg, rr, counts, smax, hslot, h12, h13, hdim)
        visited += 1
        if sample_every > 0 and visited % sample_every == 0:
            if not _hudson_proper(deg[lvl], _flatten(lvl, vals, cnts, nb, rr)):
                bad += 1
        if deg[lvl] < D:
            stack, sp = _push_children(lvl, vals, cnts, nb, deg, D, stack, sp)
    return bad
