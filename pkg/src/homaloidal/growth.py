"""Growth statistics: the c(d) curve, maximal seedbeds, Kalmár's function and zeta."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .core import Regime, regime
from .enumeration import CountReport, enumerate_types
from .tree import parent

SQRT_LN2 = math.sqrt(math.log(2))
TWO_SQRT_LN2 = 2 * SQRT_LN2


@dataclass
class GrowthCurve:
    points: list[tuple[int, int, float]]  # (d, N_d, c_d)
    lower: float = SQRT_LN2
    upper: float = TWO_SQRT_LN2

    def c(self, d: int) -> float:
        for dd, _, c in self.points:
            if dd == d:
                return c
        raise KeyError(d)

    def out_of_band(self, start: int = 16, slack: float = 1e-12) -> list[int]:
        return [d for d, _, c in self.points
                if d >= start and not (self.lower - slack <= c <= self.upper + slack)]

    def to_csv(self) -> str:
        rows = ["degree,N_d,c_d"] + [f"{d},{n},{c:.15g}" for d, n, c in self.points]
        return "\n".join(rows) + "\n"


def c_value(n_d: int, d: int) -> float:
    return math.log(math.log(n_d)) / math.sqrt(math.log(d))


def c_curve(report: CountReport) -> GrowthCurve:
    """Points ``(d, N_d, ln ln N_d / sqrt(ln d))`` wherever ``N_d >= 3``."""
    pts = [(d, n, c_value(n, d)) for d, n in sorted(report.counts.items()) if d >= 2 and n >= 3]
    return GrowthCurve(pts)


@dataclass
class SeedbedRow:
    degree: int
    s_d: int
    beta_bound: float | None = None
    above_beta: bool | None = None
    alpha_envelope: float | None = None


def max_seedbed(report: CountReport, beta: float | None = None, alpha: float | None = None,
                c_alpha: float = 1.0) -> list[SeedbedRow]:
    """Per-degree maximal seedbed, compared with ``exp(beta sqrt(ln d))``.

    ``c_alpha * exp(alpha sqrt(ln d))`` is only reported; its constant has no
    known value so nothing is asserted against it.
    """
    rows = []
    for d in sorted(report.seedbed_max):
        row = SeedbedRow(d, report.seedbed_max[d])
        if d >= 2:
            root = math.sqrt(math.log(d))
            if beta is not None:
                row.beta_bound = math.exp(beta * root)
                row.above_beta = row.s_d >= row.beta_bound
            if alpha is not None:
                row.alpha_envelope = c_alpha * math.exp(alpha * root)
        rows.append(row)
    return rows


def seedbed_csv(rows: list[SeedbedRow]) -> str:
    return "\n".join(["degree,s_d"] + [f"{r.degree},{r.s_d}" for r in rows]) + "\n"


def is_non_decreasing(values) -> bool:
    values = list(values)
    return all(a <= b for a, b in zip(values, values[1:]))


def average_step_ratio(max_degree: int) -> Fraction | None:
    """Smallest ``d(x)/d(p(x)) - 1`` over average-regime types; an empirical eta_0."""
    best: list[Fraction] = []

    def visit(t):
        if t.degree >= 2 and regime(t) is Regime.AVERAGE:
            p, _ = parent(t)
            r = Fraction(t.degree, p.degree) - 1
            if not best or r < best[0]:
                best[:] = [r]

    enumerate_types(max_degree, visit)
    return best[0] if best else None


# --- Kalmár's function -----------------------------------------------------

@dataclass
class KalmarTable:
    n_max: int
    values: np.ndarray  # values[n] = K_n, values[0] unused
    rho: float
    a: float
    partial_sums: np.ndarray = field(init=False)

    def __post_init__(self):
        self.partial_sums = np.cumsum(self.values)

    def __getitem__(self, n: int) -> int:
        return int(self.values[n])

    def ratio(self, n: int | None = None) -> float:
        """``sum_{d<=n} K_d / (a n^rho)``."""
        n = self.n_max if n is None else n
        return float(self.partial_sums[n]) / (self.a * n ** self.rho)

    def to_csv(self) -> str:
        rows = ["n,K_n,partial_sum"]
        rows += [f"{n},{int(self.values[n])},{int(self.partial_sums[n])}"
                 for n in range(1, self.n_max + 1)]
        return "\n".join(rows) + "\n"

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv())


def kalmar_sieve(n_max: int) -> np.ndarray:
    """``K_n`` for ``0 <= n <= n_max`` with ``K_1 = 1`` and ``K_0 = 0``."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    rho, a = zeta_rho()
    # the partial sums behave like a n^rho; leave a wide margin below 2^63
    if 4 * a * float(n_max) ** rho > 2.0 ** 62:
        raise OverflowError(f"Kalmár sums up to {n_max} do not fit in 64 bits")
    k = np.zeros(n_max + 1, dtype=np.int64)
    k[1] = 1
    for m in range(1, n_max // 2 + 1):
        k[2 * m::m] += k[m]
    return k


def kalmar_table(n_max: int) -> KalmarTable:
    rho, a = zeta_rho()
    return KalmarTable(n_max, kalmar_sieve(n_max), rho, a)


@lru_cache(maxsize=None)
def kalmar(n: int) -> int:
    """Number of ordered factorizations of ``n`` into factors ``>= 2``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    return sum(kalmar(n // q) for q in _divisors(n) if q >= 2)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    q = 1
    while q * q <= n:
        if n % q == 0:
            small.append(q)
            if q * q != n:
                large.append(n // q)
        q += 1
    return small + large[::-1]


# --- Riemann zeta by Euler-Maclaurin --------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """``B_2, B_4, ..., B_{2 count}``."""
    b = [Fraction(1)]
    for m in range(1, 2 * count + 1):
        b.append(-sum(math.comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return tuple(b[2 * k] for k in range(1, count + 1))


def _em_terms(s: float, cutoff: int, order: int):
    """Euler-Maclaurin pieces for zeta(s) and zeta'(s), head sum up to cutoff-1."""
    ln_n = math.log(cutoff)
    head = sum(n ** -s for n in range(1, cutoff))
    dhead = -sum(math.log(n) * n ** -s for n in range(2, cutoff))
    tail_int = cutoff ** (1 - s) / (s - 1)
    dtail_int = -ln_n * tail_int - tail_int / (s - 1)
    half = 0.5 * cutoff ** -s
    dhalf = -ln_n * half
    corr = dcorr = 0.0
    rising = 1.0  # s (s+1) ... (s+2k-2)
    drising_ratio = 0.0  # d/ds log(rising)
    for k, b2k in enumerate(_bernoulli_even(order), start=1):
        if k == 1:
            rising, drising_ratio = s, 1 / s
        else:
            for j in (2 * k - 3, 2 * k - 2):
                rising *= s + j
                drising_ratio += 1 / (s + j)
        term = float(b2k) / math.factorial(2 * k) * rising * cutoff ** (-s - 2 * k + 1)
        corr += term
        dcorr += term * (drising_ratio - ln_n)
    return head + tail_int + half + corr, dhead + dtail_int + dhalf + dcorr


def zeta(s: float, cutoff: int = 20, order: int = 12) -> float:
    """Riemann zeta for real ``s > 1``."""
    if s <= 1:
        raise ValueError("zeta is evaluated only for s > 1")
    return _em_terms(s, cutoff, order)[0]


def zeta_prime(s: float, cutoff: int = 20, order: int = 12) -> float:
    if s <= 1:
        raise ValueError("zeta' is evaluated only for s > 1")
    return _em_terms(s, cutoff, order)[1]


@lru_cache(maxsize=None)
def zeta_rho() -> tuple[float, float]:
    """``rho`` with ``zeta(rho) = 2`` and ``a = 1 / |rho zeta'(rho)|``."""
    rho = brentq(lambda s: zeta(s) - 2.0, 1.0 + 1e-6, 2.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return rho, 1.0 / abs(rho * zeta_prime(rho))
