"""Union measures from intersection tables, and the two table-comparison
verifiers built on them.

Given complete intersection tables, the measure of a finite union is the
alternating inclusion-exclusion sum.  Two consequences are checked at finite
truncation: tables with entry-wise equal intersections yield equal union
measures on every range, and tables whose intersections compare with
alternating direction (odd lengths >=, even lengths <=) yield ordered union
measures on every range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from .bounds import MeasureTable, TableError
from .intervals import format_rational

ZERO = Fraction(0)

DEFAULT_RANGE_CAP = 20  # 2^20 subsets is the enumeration cost ceiling


class HypothesisViolation(ValueError):
    """The alternating entry-wise hypothesis fails; carries the witness tuple."""

    def __init__(self, indices: Tuple[int, ...], a: Fraction, b: Fraction):
        self.indices = indices
        self.a = a
        self.b = b
        super().__init__(
            f"alternating hypothesis fails at {indices}: "
            f"mu_A={format_rational(a)}, mu_B={format_rational(b)}"
        )


def union_by_inclusion_exclusion(
    table: MeasureTable, k: int, n: int, cap: int = DEFAULT_RANGE_CAP
) -> Fraction:
    """mu(union_{i=k}^{n} A_i) as the exact alternating sum over all nonempty
    subsets of {k..n}.  Every required tuple must be present in the table."""
    if k < 1 or n < k:
        raise ValueError(f"invalid range [{k}, {n}]")
    width = n - k + 1
    if width > cap:
        raise ValueError(f"range width {width} exceeds the enumeration cap {cap}")
    total = ZERO
    for size in range(1, width + 1):
        sign = 1 if size % 2 == 1 else -1
        level = ZERO
        for idx in combinations(range(k, n + 1), size):
            level += table.get(idx)
        total += sign * level
    return total


@dataclass
class UnionComparison:
    k: int
    n: int
    lhs_union: Fraction
    rhs_union: Fraction
    relation: str  # "equal" | "lhs_ge_rhs" | "violated"
    witness: Optional[Tuple[int, ...]] = None

    def to_json(self) -> dict:
        data = {
            "k": self.k,
            "n": self.n,
            "lhs_union": format_rational(self.lhs_union),
            "rhs_union": format_rational(self.rhs_union),
            "relation": self.relation,
        }
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


def _first_differing_tuple(table_a, table_b, k, n):
    for size in range(1, n - k + 2):
        for idx in combinations(range(k, n + 1), size):
            if table_a.get(idx) != table_b.get(idx):
                return idx
    return None


def verify_thm_equal_unions(
    table_a: MeasureTable, table_b: MeasureTable, k_max: int, n_max: int,
    cap: int = DEFAULT_RANGE_CAP,
) -> List[UnionComparison]:
    """Equal intersection tables must give equal union measures on all ranges
    [k, n] with k <= k_max, n <= n_max.  Discrepancies name the first
    differing intersection term."""
    out = []
    for k in range(1, k_max + 1):
        for n in range(k, n_max + 1):
            if n - k + 1 > cap:
                continue
            ua = union_by_inclusion_exclusion(table_a, k, n, cap)
            ub = union_by_inclusion_exclusion(table_b, k, n, cap)
            if ua == ub:
                out.append(UnionComparison(k, n, ua, ub, "equal"))
            else:
                out.append(UnionComparison(
                    k, n, ua, ub, "violated",
                    witness=_first_differing_tuple(table_a, table_b, k, n),
                ))
    return out


def verify_thm_ordered_unions(
    table_a: MeasureTable, table_b: MeasureTable, k_max: int, n_max: int,
    cap: int = DEFAULT_RANGE_CAP,
) -> List[UnionComparison]:
    """Alternating entry-wise inequalities (odd tuple lengths: A >= B; even:
    A <= B) must give mu_A(union) >= mu_B(union) on all ranges.

    The hypothesis is checked entry-wise first; a violation raises before any
    union is compared.
    """
    top = min(n_max, table_a.n, table_b.n)
    # entry-wise hypothesis, over the tuples both tables hold within range
    for idx in sorted(table_a.entries.keys() & table_b.entries.keys()):
        if idx[-1] > top:
            continue
        a = table_a.entries[idx]
        b = table_b.entries[idx]
        if len(idx) % 2 == 1 and a < b:
            raise HypothesisViolation(idx, a, b)
        if len(idx) % 2 == 0 and a > b:
            raise HypothesisViolation(idx, a, b)
    out = []
    for k in range(1, k_max + 1):
        for n in range(k, n_max + 1):
            if n - k + 1 > cap:
                continue
            ua = union_by_inclusion_exclusion(table_a, k, n, cap)
            ub = union_by_inclusion_exclusion(table_b, k, n, cap)
            if ua == ub:
                out.append(UnionComparison(k, n, ua, ub, "equal"))
            elif ua > ub:
                out.append(UnionComparison(k, n, ua, ub, "lhs_ge_rhs"))
            else:
                out.append(UnionComparison(k, n, ua, ub, "violated"))
    return out
