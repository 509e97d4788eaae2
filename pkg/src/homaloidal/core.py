"""Homaloidal types: data model, literal grammar, Noether checks and accessors.

A homaloidal type ``(d; m_1, ..., m_r)`` is stored as a degree plus a
non-increasing tuple of positive multiplicities.  Zeros are never stored;
callers that need them (seed selection, display) pad on demand.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Sequence


class TypeSyntaxError(ValueError):
    """Raised when a type literal cannot be parsed."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True, order=True)
class HomaloidalCandidate:
    """A degree with a non-increasing list of positive multiplicities.

    Not necessarily a proper homaloidal type; use
    :func:`homaloidal.tree.hudson_test` to decide that.
    """

    degree: int
    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        m = tuple(self.multiplicities)
        if any(a < b for a, b in zip(m, m[1:])):
            raise ValueError("multiplicities must be non-increasing")
        if m and m[-1] < 1:
            raise ValueError("stored multiplicities must be positive")
        object.__setattr__(self, "multiplicities", m)

    @classmethod
    def from_values(cls, degree: int, values: Sequence[int]) -> "HomaloidalCandidate":
        """Build a candidate from unsorted values; zeros are dropped."""
        if any(v < 0 for v in values):
            raise ValueError("negative multiplicity")
        return cls(degree, tuple(sorted((v for v in values if v), reverse=True)))

    @property
    def r(self) -> int:
        return len(self.multiplicities)

    def padded(self, length: int = 3) -> tuple[int, ...]:
        """Multiplicities with zeros appended up to ``length``."""
        m = self.multiplicities
        return m + (0,) * max(0, length - len(m))

    def m(self, index: int) -> int:
        """1-based multiplicity with implicit trailing zeros."""
        return self.multiplicities[index - 1] if index <= len(self.multiplicities) else 0

    def __str__(self) -> str:
        return format_type(self)


ROOT = HomaloidalCandidate(1, ())


@dataclass(frozen=True)
class Block:
    value: int
    width: int


@dataclass(frozen=True)
class NoetherStatus:
    sum_defect: int
    square_defect: int

    @property
    def satisfies_ne(self) -> bool:
        return self.sum_defect == 0 and self.square_defect == 0


class Regime(enum.Enum):
    SMALL = "small"
    AVERAGE = "average"
    LARGE = "large"


# --- literal grammar -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


def _tokenize(text: str):
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:  # only whitespace left
            break
        start = match.start(1) if match.group(1) else match.start(2)
        if match.group(1) is not None:
            yield "int", int(match.group(1)), start
        elif match.group(2) is not None:
            if match.group(2) == "-":
                yield "neg", "-", start
            else:
                yield "sym", match.group(2), start
        pos = match.end()
    yield "end", None, len(text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if kind != "sym" or val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise TypeSyntaxError(f"expected {value!r}, found {found}", self.text, pos)

    def integer(self, what: str) -> int:
        kind, val, pos = self.take()
        if kind == "neg":
            raise TypeSyntaxError(f"negative {what}", self.text, pos)
        if kind != "int":
            found = "end of input" if kind == "end" else repr(val)
            raise TypeSyntaxError(f"expected {what}, found {found}", self.text, pos)
        return val

    def parse(self) -> HomaloidalCandidate:
        self.expect("(")
        _, _, dpos = self.peek()
        degree = self.integer("degree")
        if degree < 1:
            raise TypeSyntaxError("degree must be positive", self.text, dpos)
        self.expect(";")
        values: list[int] = []
        while True:
            value = self.integer("multiplicity")
            width = 1
            kind, val, _ = self.peek()
            if kind == "sym" and val == "^":
                self.take()
                width = self.integer("exponent")
            values.extend([value] * width)
            kind, val, pos = self.peek()
            if kind == "sym" and val == ",":
                self.take()
                continue
            break
        self.expect(")")
        kind, val, pos = self.take()
        if kind != "end":
            raise TypeSyntaxError(f"trailing input {val!r}", self.text, pos)
        return HomaloidalCandidate.from_values(degree, values)


def parse_type(text: str) -> HomaloidalCandidate:
    """Parse a literal such as ``"(5; 2, 2^5)"`` or ``"(1;0)"``.

    Exponents expand to repeated values; the result is sorted and zeros are
    dropped.  Multiplicities are not compared with the degree here.
    """
    return _Parser(text).parse()


def format_type(t: HomaloidalCandidate, block_notation: bool = True) -> str:
    if not t.multiplicities:
        return f"({t.degree};0)"
    if block_notation:
        items = [str(b.value) if b.width == 1 else f"{b.value}^{b.width}" for b in blocks(t)]
    else:
        items = [str(v) for v in t.multiplicities]
    return f"({t.degree};{','.join(items)})"


# --- accessors --------------------------------------------------------------

def blocks(t: HomaloidalCandidate) -> list[Block]:
    return [Block(v, len(list(g))) for v, g in groupby(t.multiplicities)]


def seedbed(t: HomaloidalCandidate) -> int:
    """Number of distinct non-zero multiplicity values."""
    return len(set(t.multiplicities))


def dimension(t: HomaloidalCandidate) -> int:
    """Dimension ``8 + 2r`` of the component of Bir(P^2) attached to ``t``."""
    return 8 + 2 * t.r


def noether_status(t: HomaloidalCandidate) -> NoetherStatus:
    m = t.multiplicities
    d = t.degree
    return NoetherStatus(3 * d - 3 - sum(m), d * d - 1 - sum(v * v for v in m))


def satisfies_noether(t: HomaloidalCandidate) -> bool:
    return noether_status(t).satisfies_ne


def _require_degree_two(t: HomaloidalCandidate, what: str):
    if t.degree < 2:
        raise ValueError(f"{what} is undefined for degree 1")


def noether_inequality_holds(t: HomaloidalCandidate) -> bool:
    """``m_1 + m_2 + m_3 >= d + 1``."""
    _require_degree_two(t, "the Noether inequality")
    m1, m2, m3 = t.padded(3)[:3]
    return m1 + m2 + m3 >= t.degree + 1


def regime(t: HomaloidalCandidate) -> Regime:
    """Classify ``m_1/d`` with exact integer comparisons.

    Large is strictly above 5/6, small strictly below 7/20; the closed
    interval in between is average.
    """
    _require_degree_two(t, "the regime")
    m1, d = t.m(1), t.degree
    if 6 * m1 > 5 * d:
        return Regime.LARGE
    if 20 * m1 < 7 * d:
        return Regime.SMALL
    return Regime.AVERAGE


def first_ratio(t: HomaloidalCandidate) -> Fraction:
    return Fraction(t.m(1), t.degree)


def tail_threshold(t: HomaloidalCandidate) -> int:
    return t.degree - t.m(1) - t.m(2)


def tail(t: HomaloidalCandidate) -> tuple[int, ...]:
    """Maximal suffix of stored multiplicities bounded by ``d - m_1 - m_2``."""
    threshold = tail_threshold(t)
    m = t.multiplicities
    i = len(m)
    while i > 0 and m[i - 1] <= threshold:
        i -= 1
    return m[i:]
