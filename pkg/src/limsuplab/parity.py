"""Parity families: two collections C_1..C_{m+1}, D_1..D_{m+1} of dyadic unions.

Each dyadic interval of length 2^-m is assigned to one subset of {1..m+1}:
odd-size subsets for the D collection (all 2^m of them), nonempty even-size
subsets for the C collection (2^m - 1 of them, so the last dyadic interval is
left uncovered by every C_i).  D_i / C_i is the union of the intervals whose
subset contains i.  The point of the construction: all l-wise intersection
measures of the two collections agree exactly for l <= m, while the unions
differ in measure by exactly 2^-m.

Subsets are encoded as bitmasks (bit i-1 <=> element i) and enumerated in
ascending integer order; the t-th qualifying subset (1-based) receives the
dyadic interval [(t-1)*2^-m, t*2^-m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .intervals import IntervalSet, format_rational, intersect_all, union_all


@dataclass
class ParityFamily:
    m: int
    C: List[IntervalSet]  # C[i-1] holds C_i, i = 1..m+1
    D: List[IntervalSet]
    # bitmask of the assigned subset -> dyadic interval index in 0..2^m-1
    assignment_odd: Dict[int, int] = field(default_factory=dict)
    assignment_even: Dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "C": [s.to_json() for s in self.C],
            "D": [s.to_json() for s in self.D],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParityFamily":
        return cls(
            m=data["m"],
            C=[IntervalSet.from_json(s) for s in data["C"]],
            D=[IntervalSet.from_json(s) for s in data["D"]],
        )


def _dyadic(t: int, m: int) -> Tuple[Fraction, Fraction]:
    return (Fraction(t, 2 ** m), Fraction(t + 1, 2 ** m))


def build_parity_family(m: int) -> ParityFamily:
    """Build the two collections for a given m >= 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n_sets = m + 1
    d_pairs: List[List] = [[] for _ in range(n_sets)]
    c_pairs: List[List] = [[] for _ in range(n_sets)]
    assignment_odd: Dict[int, int] = {}
    assignment_even: Dict[int, int] = {}
    t_odd = t_even = 0
    for mask in range(1, 2 ** n_sets):
        size = bin(mask).count("1")
        if size % 2 == 1:
            assignment_odd[mask] = t_odd
            iv = _dyadic(t_odd, m)
            t_odd += 1
            target = d_pairs
        else:
            assignment_even[mask] = t_even
            iv = _dyadic(t_even, m)
            t_even += 1
            target = c_pairs
        for i in range(n_sets):
            if mask >> i & 1:
                target[i].append(iv)
    assert t_odd == 2 ** m and t_even == 2 ** m - 1
    return ParityFamily(
        m=m,
        C=[IntervalSet(p) for p in c_pairs],
        D=[IntervalSet(p) for p in d_pairs],
        assignment_odd=assignment_odd,
        assignment_even=assignment_even,
    )


@dataclass
class ParityReport:
    m: int
    passed: bool
    checks: int
    union_d: Fraction
    union_c: Fraction
    witness: Optional[Tuple[int, ...]] = None
    witness_measures: Optional[Tuple[Fraction, Fraction]] = None
    # the (m+1)-wise intersections, where the two collections are allowed to differ
    full_tuple_c: Fraction = Fraction(0)
    full_tuple_d: Fraction = Fraction(0)

    def to_json(self) -> dict:
        data = {
            "m": self.m,
            "passed": self.passed,
            "checks": self.checks,
            "union_D": format_rational(self.union_d),
            "union_C": format_rational(self.union_c),
            "full_tuple_C": format_rational(self.full_tuple_c),
            "full_tuple_D": format_rational(self.full_tuple_d),
        }
        if self.witness is not None:
            data["witness"] = list(self.witness)
            data["witness_measures"] = [format_rational(v) for v in self.witness_measures]
        return data


def verify_parity_properties(fam: ParityFamily) -> ParityReport:
    """Exhaustively check the l-wise intersection equalities (l <= m) and the
    union identities.  Failure is reported with the first witness tuple."""
    m = fam.m
    checks = 0
    witness = None
    witness_measures = None
    for l in range(1, m + 1):
        for idx in combinations(range(1, m + 2), l):
            mc = intersect_all(fam.C[i - 1] for i in idx).measure()
            md = intersect_all(fam.D[i - 1] for i in idx).measure()
            checks += 1
            if mc != md and witness is None:
                witness = idx
                witness_measures = (mc, md)
    union_d = union_all(fam.D).measure()
    union_c = union_all(fam.C).measure()
    full = tuple(range(1, m + 2))
    full_c = intersect_all(fam.C[i - 1] for i in full).measure()
    full_d = intersect_all(fam.D[i - 1] for i in full).measure()
    passed = (
        witness is None
        and union_d == Fraction(1)
        and union_c == Fraction(1) - Fraction(1, 2 ** m)
    )
    return ParityReport(
        m=m,
        passed=passed,
        checks=checks,
        union_d=union_d,
        union_c=union_c,
        witness=witness,
        witness_measures=witness_measures,
        full_tuple_c=full_c,
        full_tuple_d=full_d,
    )
