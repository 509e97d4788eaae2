"""Published reference values for N_d and S_d, used to cross-check computed reports."""

from __future__ import annotations

# census of N_d: degrees 1..18 plus a few large degrees
PUBLISHED_N = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 4, 7: 5, 8: 9, 9: 10, 10: 17, 11: 19, 12: 29,
    13: 34, 14: 51, 15: 63, 16: 88, 17: 102, 18: 152,
    50: 52683, 100: 9733297, 125: 59637891, 150: 287772117, 200: 3585742777,
    249: 25275093795,
}

# N_d for small degrees, listed together with the number S_d of Noether solutions
PUBLISHED_N_SMALL = {
    2: 1, 3: 1, 4: 2, 5: 3, 6: 4, 7: 5, 8: 9, 9: 10, 10: 17, 11: 19, 12: 29, 13: 34,
    14: 51, 15: 63,
}
PUBLISHED_S = {
    2: 1, 3: 1, 4: 2, 5: 4, 6: 5, 7: 9, 8: 16, 9: 25, 10: 42, 11: 64, 12: 107, 13: 165,
    14: 256, 15: 402,
}

PUBLISHED_HISTOGRAM_TOTAL_200 = 3585742777


def mismatches(counts: dict[int, int], solutions: dict[int, int] | None = None) -> list[str]:
    """Human-readable list of reference entries disagreeing with computed values."""
    out = []
    for label, table, got in (("N_d census", PUBLISHED_N, counts),
                              ("N_d small degrees", PUBLISHED_N_SMALL, counts),
                              ("S_d", PUBLISHED_S, solutions or {})):
        for d, ref in sorted(table.items()):
            if d in got and got[d] != ref:
                out.append(f"{label}: d={d} published {ref}, computed {got[d]}")
    return out
