"""Exact algebra of finite unions of half-open rational intervals in [0,1).

Every set handled by this package is a canonical, sorted, disjoint union of
intervals [lo, hi) with Fraction endpoints.  All arithmetic is exact; there is
no floating point anywhere.  Canonical form means structural equality of two
IntervalSet objects coincides with set equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

ZERO = Fraction(0)
ONE = Fraction(1)

Pair = Tuple[Fraction, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse a rational written as "p/q" (or a bare integer string)."""
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" with q > 0 and the fraction in lowest terms."""
    return f"{value.numerator}/{value.denominator}"


class IntervalSetError(ValueError):
    """Raised for invalid interval data (reversed endpoints, out of range)."""


def _canonicalize_pairs(raw: Iterable[Sequence]) -> Tuple[Pair, ...]:
    pairs = []
    for lo, hi in raw:
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo >= hi:
            raise IntervalSetError(f"empty or reversed interval [{lo}, {hi})")
        if lo < ZERO or hi > ONE:
            raise IntervalSetError(f"interval [{lo}, {hi}) escapes [0,1]")
        pairs.append((lo, hi))
    pairs.sort()
    merged = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple((lo, hi) for lo, hi in merged)


class IntervalSet:
    """A canonical finite union of half-open intervals inside [0,1)."""

    __slots__ = ("pairs",)

    def __init__(self, raw: Iterable[Sequence] = (), *, _pairs: Tuple[Pair, ...] = None):
        if _pairs is not None:
            self.pairs = _pairs
        else:
            self.pairs = _canonicalize_pairs(raw)

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        body = " ".join(f"[{lo},{hi})" for lo, hi in self.pairs)
        return f"IntervalSet({body or 'empty'})"

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return intersect(self, other)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return union(self, other)

    # -- queries -----------------------------------------------------------

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.pairs), ZERO)

    def is_subset_of(self, other: "IntervalSet") -> bool:
        return intersect(self, other) == self

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "intervals": [[format_rational(lo), format_rational(hi)] for lo, hi in self.pairs]
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntervalSet":
        return cls((parse_rational(lo), parse_rational(hi)) for lo, hi in data["intervals"])


EMPTY = IntervalSet()
FULL = IntervalSet([(ZERO, ONE)])


def canonicalize(raw: Iterable[Sequence]) -> IntervalSet:
    """Sort, merge and validate a raw sequence of rational interval pairs."""
    return IntervalSet(raw)


def measure(a: IntervalSet) -> Fraction:
    return a.measure()


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    """Exact intersection via a two-pointer sweep over canonical pair lists."""
    out = []
    i = j = 0
    pa, pb = a.pairs, b.pairs
    while i < len(pa) and j < len(pb):
        lo = max(pa[i][0], pb[j][0])
        hi = min(pa[i][1], pb[j][1])
        if lo < hi:
            out.append((lo, hi))
        if pa[i][1] <= pb[j][1]:
            i += 1
        else:
            j += 1
    return IntervalSet(_pairs=tuple(out))


def intersect_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    result = FULL
    for s in sets:
        result = intersect(result, s)
        if not result:
            break
    return result


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return IntervalSet(list(a.pairs) + list(b.pairs))


def union_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    pairs = []
    for s in sets:
        pairs.extend(s.pairs)
    return IntervalSet(pairs)


def complement(a: IntervalSet) -> IntervalSet:
    """Complement within [0,1)."""
    out = []
    cursor = ZERO
    for lo, hi in a.pairs:
        if cursor < lo:
            out.append((cursor, lo))
        cursor = hi
    if cursor < ONE:
        out.append((cursor, ONE))
    return IntervalSet(_pairs=tuple(out))


def scale_translate(a: IntervalSet, factor: Fraction, offset: Fraction = ZERO) -> IntervalSet:
    """Image of a under x -> factor*x + offset; must stay inside [0,1]."""
    factor = Fraction(factor)
    offset = Fraction(offset)
    if factor <= ZERO:
        raise IntervalSetError("scale factor must be positive")
    if offset < ZERO or factor + offset > ONE:
        raise IntervalSetError(f"image of [0,1) under x -> {factor}x + {offset} escapes [0,1]")
    pairs = tuple((factor * lo + offset, factor * hi + offset) for lo, hi in a.pairs)
    return IntervalSet(_pairs=pairs)


def tile(a: IntervalSet, cells: int) -> IntervalSet:
    """Union of `cells` copies of a shrunk by 1/cells, one per cell [t/cells, (t+1)/cells)."""
    if cells < 1:
        raise IntervalSetError("cell count must be >= 1")
    width = Fraction(1, cells)
    pairs = []
    for t in range(cells):
        offset = t * width
        for lo, hi in a.pairs:
            pairs.append((width * lo + offset, width * hi + offset))
    return IntervalSet(pairs)
