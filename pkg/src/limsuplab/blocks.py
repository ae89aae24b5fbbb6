"""Iterated block construction of two sequences (A_i), (B_i) in [0,1).

Block 1 (size m+1) is the parity family: A = C, B = D.  Block k+1 (size
(m+1)^{k+1}) is produced by intersecting each block-k set with a replicator:
the first-block set shrunk by 2^{km} and tiled into every dyadic cell of that
width.  The tiling makes the replicators exactly product-independent of all
coarser sets, so the l-wise intersection equalities (l <= m) propagate to every
block, while the A block unions shrink geometrically and the B block unions
keep covering [0,1).

An optional global scaling c maps every set through x -> c*x; c = 0 is allowed
and yields empty sets (degenerate, but all equalities hold trivially).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .intervals import (
    EMPTY,
    IntervalSet,
    format_rational,
    intersect,
    intersect_all,
    parse_rational,
    scale_translate,
    tile,
    union_all,
)
from .parity import ParityFamily, build_parity_family

ONE = Fraction(1)


def block_size_sum(m: int, k: int) -> int:
    """S_k = sum_{r=1}^{k} (m+1)^r, the number of sets in the first k blocks."""
    return sum((m + 1) ** r for r in range(1, k + 1))


def block_bounds(m: int, k: int) -> Tuple[int, int]:
    """1-based (first, last) index of block k."""
    if k < 1:
        raise ValueError("block number must be >= 1")
    return (block_size_sum(m, k - 1) + 1, block_size_sum(m, k))


def block_of(m: int, n: int) -> int:
    """Block number containing 1-based index n."""
    if n < 1:
        raise ValueError("index must be >= 1")
    k = 1
    while n > block_size_sum(m, k):
        k += 1
    return k


def index_maps(m: int, n: int) -> Tuple[int, int, int]:
    """Decompose an index n of block k+1 as n = S_k + (m+1)(i-1) + j.

    Returns (f(n), g(n), k) where f(n) = S_{k-1} + i is the parent index in
    block k and g(n) = j picks the replicator.  Block-1 indices are rejected.
    """
    kp1 = block_of(m, n)
    if kp1 < 2:
        raise ValueError(f"index {n} lies in block 1 and has no predecessor")
    k = kp1 - 1
    rem = n - block_size_sum(m, k) - 1  # 0-based offset within block k+1
    i = rem // (m + 1) + 1
    j = rem % (m + 1) + 1
    return (block_size_sum(m, k - 1) + i, j, k)


@dataclass
class BlockFamily:
    m: int
    K: int
    c: Fraction
    A: List[IntervalSet]  # scaled by c; A[n-1] holds A_n
    B: List[IntervalSet]
    A_raw: List[IntervalSet]  # the c = 1 sets, used for replicator checks
    B_raw: List[IntervalSet]
    base: ParityFamily
    E: Dict[int, List[IntervalSet]] = field(default_factory=dict)  # level -> E_1..E_{m+1}
    F: Dict[int, List[IntervalSet]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.A)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "K": self.K,
            "c": format_rational(self.c),
            "A": [s.to_json() for s in self.A],
            "B": [s.to_json() for s in self.B],
        }


def build_block_family(m: int, K: int, c=ONE, max_sets: int = 20000) -> BlockFamily:
    """Build the first K blocks for parameter m, then scale everything by c."""
    if m < 1 or K < 1:
        raise ValueError("m and K must be >= 1")
    c = Fraction(c)
    if c < 0 or c > 1:
        raise ValueError("scaling c must lie in [0,1]")
    if block_size_sum(m, K) > max_sets:
        raise ValueError(
            f"family would hold {block_size_sum(m, K)} sets, above the cap {max_sets}"
        )
    base = build_parity_family(m)
    a_raw: List[IntervalSet] = list(base.C)
    b_raw: List[IntervalSet] = list(base.D)
    reps_e: Dict[int, List[IntervalSet]] = {}
    reps_f: Dict[int, List[IntervalSet]] = {}
    for k in range(1, K):
        cells = 2 ** (k * m)
        e_sets = [tile(base.C[j], cells) for j in range(m + 1)]
        f_sets = [tile(base.D[j], cells) for j in range(m + 1)]
        reps_e[k + 1] = e_sets
        reps_f[k + 1] = f_sets
        first, last = block_bounds(m, k)
        for parent in range(first, last + 1):
            pa = a_raw[parent - 1]
            pb = b_raw[parent - 1]
            for j in range(m + 1):
                a_raw.append(intersect(e_sets[j], pa))
                b_raw.append(intersect(f_sets[j], pb))
    if c == 1:
        a_scaled, b_scaled = a_raw, b_raw
    elif c == 0:
        a_scaled = [EMPTY] * len(a_raw)
        b_scaled = [EMPTY] * len(b_raw)
    else:
        a_scaled = [scale_translate(s, c) for s in a_raw]
        b_scaled = [scale_translate(s, c) for s in b_raw]
    return BlockFamily(
        m=m, K=K, c=c, A=a_scaled, B=b_scaled, A_raw=a_raw, B_raw=b_raw,
        base=base, E=reps_e, F=reps_f,
    )


@dataclass
class BlockReport:
    passed: bool
    checks: int
    witness: Optional[Tuple[int, ...]] = None
    witness_measures: Optional[Tuple[Fraction, Fraction]] = None

    def to_json(self) -> dict:
        data = {"passed": self.passed, "checks": self.checks}
        if self.witness is not None:
            data["witness"] = list(self.witness)
            data["witness_measures"] = [format_rational(v) for v in self.witness_measures]
        return data


def verify_block_equalities(fam: BlockFamily, l_max: int) -> BlockReport:
    """Check mu(A-tuple) == mu(B-tuple) for all sorted distinct index tuples of
    length 1..l_max over every built index.  Exact; first mismatch reported."""
    if l_max > fam.m:
        raise ValueError("equalities are only guaranteed for tuple length <= m")
    checks = 0
    for l in range(1, l_max + 1):
        for idx in combinations(range(1, fam.size + 1), l):
            ma = intersect_all(fam.A[i - 1] for i in idx).measure()
            mb = intersect_all(fam.B[i - 1] for i in idx).measure()
            checks += 1
            if ma != mb:
                return BlockReport(False, checks, idx, (ma, mb))
    return BlockReport(True, checks)


def find_violating_tuple(fam: BlockFamily, l: int) -> Optional[Tuple[Tuple[int, ...], Fraction, Fraction]]:
    """First tuple of length l whose A and B intersection measures differ.

    With l = m+1 this exhibits the sharpness of the construction: the
    equalities are only guaranteed up to length m.
    """
    for idx in combinations(range(1, fam.size + 1), l):
        ma = intersect_all(fam.A[i - 1] for i in idx).measure()
        mb = intersect_all(fam.B[i - 1] for i in idx).measure()
        if ma != mb:
            return (idx, ma, mb)
    return None


@dataclass
class IndependenceReport:
    passed: bool
    precondition_ok: bool
    lhs_e: Optional[Fraction] = None
    rhs_e: Optional[Fraction] = None
    lhs_f: Optional[Fraction] = None
    rhs_f: Optional[Fraction] = None
    detail: str = ""

    def to_json(self) -> dict:
        data = {"passed": self.passed, "precondition_ok": self.precondition_ok,
                "detail": self.detail}
        for name in ("lhs_e", "rhs_e", "lhs_f", "rhs_f"):
            v = getattr(self, name)
            if v is not None:
                data[name] = format_rational(v)
        return data


def verify_replicator_independence(
    fam: BlockFamily, level: int, prior_indices: Tuple[int, ...], j: int
) -> IndependenceReport:
    """Check the product identity mu(E_j ^ level-replicator intersected with a
    tuple of coarser sets) = mu(E_j) * mu(tuple), and the same for F/B.

    The identity is only asserted for indices drawn from blocks < level, on the
    unscaled (c = 1) sets; out-of-range indices are reported, not raised.
    """
    if level not in fam.E:
        return IndependenceReport(False, False, detail=f"level {level} not built")
    if not 1 <= j <= fam.m + 1:
        return IndependenceReport(False, False, detail=f"replicator index {j} out of range")
    limit = block_size_sum(fam.m, level - 1)  # last index of block level-1
    bad = [i for i in prior_indices if not 1 <= i <= limit]
    if bad:
        return IndependenceReport(
            False, False,
            detail=f"indices {bad} are not in blocks 1..{level - 1}; identity not asserted",
        )
    e = fam.E[level][j - 1]
    f = fam.F[level][j - 1]
    inter_a = intersect_all(fam.A_raw[i - 1] for i in prior_indices)
    inter_b = intersect_all(fam.B_raw[i - 1] for i in prior_indices)
    lhs_e = intersect(e, inter_a).measure()
    rhs_e = e.measure() * inter_a.measure()
    lhs_f = intersect(f, inter_b).measure()
    rhs_f = f.measure() * inter_b.measure()
    return IndependenceReport(
        passed=(lhs_e == rhs_e and lhs_f == rhs_f),
        precondition_ok=True,
        lhs_e=lhs_e, rhs_e=rhs_e, lhs_f=lhs_f, rhs_f=rhs_f,
    )


def tail_union_measures(fam: BlockFamily) -> List[Tuple[int, Fraction, Fraction]]:
    """Per-block union measures (k, mu(union of A block k), mu(union of B block k))."""
    out = []
    for k in range(1, fam.K + 1):
        first, last = block_bounds(fam.m, k)
        ua = union_all(fam.A[i - 1] for i in range(first, last + 1)).measure()
        ub = union_all(fam.B[i - 1] for i in range(first, last + 1)).measure()
        out.append((k, ua, ub))
    return out


def block_union_nesting_holds(fam: BlockFamily) -> bool:
    """Union of block k+1 of A is contained in union of block k, for all k."""
    prev = None
    for k in range(1, fam.K + 1):
        first, last = block_bounds(fam.m, k)
        cur = union_all(fam.A[i - 1] for i in range(first, last + 1))
        if prev is not None and not cur.is_subset_of(prev):
            return False
        prev = cur
    return True


def family_from_json(data: dict) -> BlockFamily:
    """Rebuild a family from its JSON export (raw sets are re-derived only when
    c is invertible; exports are meant for measure-table consumers)."""
    m, K, c = data["m"], data["K"], parse_rational(data["c"])
    fam = build_block_family(m, K, c)
    exported_a = [IntervalSet.from_json(s) for s in data["A"]]
    exported_b = [IntervalSet.from_json(s) for s in data["B"]]
    if exported_a != fam.A or exported_b != fam.B:
        raise ValueError("exported sets do not match the deterministic construction")
    return fam
