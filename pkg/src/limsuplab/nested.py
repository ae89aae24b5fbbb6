"""Nested interval systems H_n (measure 1/n) and G_n (a p-of-q selection).

Level 1 is H_1 = [0,1), G_1 = [0, p/q).  Level n+1 places q equally spaced
child intervals of length 1/((n+1) q^n) into each of the q^{n-1} intervals of
H_n, left-justified with left endpoints 1/(n q^n) apart, so each child sits in
its own sub-cell (one q-th of the parent).  G_n is the left p/q portion of
every H_n interval, i.e. exactly the first p of its q child sub-cells.

Selecting sub-cell prefixes rather than whole child intervals is what makes
the levels behave like independent p/q-events: the G_n criterion reads the
level-(n+1) sub-cell digit of a point, a different digit for every n, so
intersections obey the exact product law

    mu(G_{i_1} ^ ... ^ G_{i_n}) = p^n / (q^n i_n).

(Selecting p whole child intervals cannot achieve this: the mass it captures
from a deeper level is a multiple of one child, but the product law demands
the non-integral fraction p^2/q of one.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .intervals import IntervalSet, format_rational, intersect_all

DEFAULT_INTERVAL_CAP = 10 ** 6


@dataclass(frozen=True)
class NestedParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.p > self.q:
            raise ValueError("need 1 <= p <= q")


@dataclass
class NestedLevel:
    n: int
    H: IntervalSet
    G: IntervalSet
    # ordered H intervals, kept separately: children are generated per parent
    h_intervals: List[Tuple[Fraction, Fraction]]


def build_nested_explicit(
    params: NestedParams, depth: int, cap: int = DEFAULT_INTERVAL_CAP
) -> List[NestedLevel]:
    """Materialize levels 1..depth as explicit interval sets."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    p, q = params.p, params.q
    if q ** (depth - 1) > cap:
        raise ValueError(
            f"level {depth} needs {q ** (depth - 1)} intervals, above the cap {cap}"
        )
    levels: List[NestedLevel] = []
    h_ints: List[Tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1))]
    for n in range(1, depth + 1):
        if n > 1:
            child_len = Fraction(1, n * q ** (n - 1))
            spacing = Fraction(1, (n - 1) * q ** (n - 1))
            children = []
            for lo, _hi in h_ints:
                for t in range(q):
                    start = lo + t * spacing
                    children.append((start, start + child_len))
            h_ints = children
        # left p/q portion of every H interval; at level 1 this is [0, p/q)
        g_ints = [(lo, lo + Fraction(p, q) * (hi - lo)) for lo, hi in h_ints]
        levels.append(
            NestedLevel(
                n=n,
                H=IntervalSet(h_ints),
                G=IntervalSet(g_ints),
                h_intervals=list(h_ints),
            )
        )
    return levels


def intersection_measure_formula(params: NestedParams, indices: Sequence[int]) -> Fraction:
    """Closed-form mu(G_{i_1} ^ ... ^ G_{i_n}) = p^n / (q^n * i_n)."""
    if not indices:
        raise ValueError("need at least one index")
    if any(i < 1 for i in indices) or any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError(f"indices must be strictly increasing positive integers: {indices}")
    n = len(indices)
    return Fraction(params.p ** n, params.q ** n * indices[-1])


@dataclass
class NestedReport:
    params: NestedParams
    depth: int
    passed: bool
    tuple_checks: int
    witness: Optional[Tuple[int, ...]] = None
    witness_measures: Optional[Tuple[Fraction, Fraction]] = None
    detail: str = ""
    # (N, 1/N): the exact tail bound mu(union_{i>=N} G_i) <= mu(H_N) = 1/N
    tail_bounds: List[Tuple[int, Fraction]] = None

    def to_json(self) -> dict:
        data = {
            "p": self.params.p,
            "q": self.params.q,
            "depth": self.depth,
            "passed": self.passed,
            "tuple_checks": self.tuple_checks,
            "detail": self.detail,
            "tail_bounds": [[n, format_rational(b)] for n, b in self.tail_bounds or []],
        }
        if self.witness is not None:
            data["witness"] = list(self.witness)
            data["witness_measures"] = [format_rational(v) for v in self.witness_measures]
        return data


def _increasing_tuples(depth: int):
    # all nonempty strictly increasing tuples from {1..depth}
    for mask in range(1, 2 ** depth):
        yield tuple(i + 1 for i in range(depth) if mask >> i & 1)


def verify_nested(params: NestedParams, depth: int, cap: int = DEFAULT_INTERVAL_CAP,
                  levels: Optional[List[NestedLevel]] = None) -> NestedReport:
    """Check the per-level measures, the nesting chain, and explicit-vs-formula
    agreement over every increasing tuple up to the depth."""
    if levels is None:
        levels = build_nested_explicit(params, depth, cap)
    p, q = params.p, params.q
    for lev in levels:
        if lev.H.measure() != Fraction(1, lev.n):
            return NestedReport(params, depth, False, 0,
                                detail=f"mu(H_{lev.n}) != 1/{lev.n}", tail_bounds=[])
        if lev.G.measure() != Fraction(p, q * lev.n):
            return NestedReport(params, depth, False, 0,
                                detail=f"mu(G_{lev.n}) != {p}/{q * lev.n}", tail_bounds=[])
        if not lev.G.is_subset_of(lev.H):
            return NestedReport(params, depth, False, 0,
                                detail=f"G_{lev.n} escapes H_{lev.n}", tail_bounds=[])
    for prev, cur in zip(levels, levels[1:]):
        if not cur.H.is_subset_of(prev.H):
            return NestedReport(params, depth, False, 0,
                                detail=f"H_{cur.n} not nested in H_{prev.n}", tail_bounds=[])
    checks = 0
    for idx in _increasing_tuples(depth):
        explicit = intersect_all(levels[i - 1].G for i in idx).measure()
        formula = intersection_measure_formula(params, idx)
        checks += 1
        if explicit != formula:
            return NestedReport(params, depth, False, checks, idx, (explicit, formula),
                                detail="explicit backend disagrees with closed form",
                                tail_bounds=[])
    tail = [(n, Fraction(1, n)) for n in range(1, depth + 1)]
    return NestedReport(params, depth, True, checks, tail_bounds=tail)
