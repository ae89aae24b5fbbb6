"""Alternating-inequality counterexample families built from nested systems.

An A_n is a disjoint union of shrunk, shifted copies of the nested G_n sets,
one copy per column j with shrink factor c_j and offset d_j.  The B_n use the
same components with factors ct_j plus a floating interval K_n of width
delta/n that cycles through [0,1), avoiding every shrunk H_n copy so it never
meets later G levels.  Intersection measures are then closed forms (for A) or
a closed-form bracket of width delta/i_r (for B), and the whole game is to
pick the constants so that the A and B intersection measures compare with
strictly alternating direction for every tuple length r <= m.

Two constant strategies:

* "paper": q_i = 10^{(b+i-1)!} with b = m, multipliers 1 or 2 times 10^gamma_i
  chosen so the reverse-diagonal term of each row of the comparison matrix
  dominates the rest of its row by a factor 10^alpha.  Exact but astronomically
  large; sets are never materialized, only their closed-form measures.
* "compact": a bounded exact search over q in {2,4,8,16,32} and power-of-two
  multipliers, small enough that the interval sets can be materialized and
  every closed form cross-checked against the explicit construction.

The dominant multiplier of column a can be assigned by the parity of column a
(the fixed assignment from the source derivation, valid for odd m) or by the
parity of its dominant row m-a+1, which yields the required inequality
directions for every m.  The row assignment is the default.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .intervals import (
    IntervalSet,
    complement,
    format_rational,
    intersect,
    intersect_all,
    scale_translate,
    union,
    union_all,
)
from .nested import NestedParams, build_nested_explicit

ZERO = Fraction(0)
ONE = Fraction(1)


class CompactSearchError(RuntimeError):
    """No compact constant witness exists within the search bounds."""


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass
class T12Constants:
    m: int
    b: int
    base: int                      # 10 for paper constants, 2 for compact
    strategy: str                  # "paper" | "compact"
    assignment: str                # "row" | "column"
    p: List[int]
    q: List[int]
    c: List[Fraction]              # normalized shrink factors, A side
    c_tilde: List[Fraction]        # normalized shrink factors, B side
    delta: Fraction                # normalized float width at level 1
    normalization: Fraction        # the raw constants were divided by this
    gamma: List[int]               # per-column multiplier exponents (gamma[0] = 0)
    alpha: List[int]               # adjacency gaps alpha_2..alpha_m ([] when m = 1)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "b": self.b,
            "base": self.base,
            "strategy": self.strategy,
            "assignment": self.assignment,
            "p": list(self.p),
            "q": [str(v) for v in self.q],
            "c": [format_rational(v) for v in self.c],
            "c_tilde": [format_rational(v) for v in self.c_tilde],
            "delta": format_rational(self.delta),
            "normalization": format_rational(self.normalization),
            "gamma": list(self.gamma),
            "alpha": list(self.alpha),
        }


def _dominant_is_large(m: int, a: int, assignment: str) -> bool:
    """Whether column a carries the (2, 1) multiplier pair rather than (1, 2)."""
    if assignment == "column":
        return a % 2 == 1
    if assignment == "row":
        return (m - a + 1) % 2 == 1
    raise ValueError(f"unknown multiplier assignment {assignment!r}")


def _assemble(m, b, base, strategy, assignment, q, exponents) -> T12Constants:
    """Common tail: multipliers from the dominance template, then delta and the
    global normalization."""
    gamma = [0]
    for n in range(2, m + 1):
        g = sum(
            Fraction(2 * m - 1 - 2 * (i - 1), 2) * (exponents[i] - exponents[i - 1])
            for i in range(1, n)
        )
        if g.denominator != 1:
            raise ValueError("multiplier exponent is not an integer; adjust q spacing")
        gamma.append(int(g))
    alpha = []
    for n in range(2, m + 1):
        a = Fraction(exponents[n - 1] - exponents[n - 2], 2)
        if a.denominator != 1:
            raise ValueError("alpha exponent is not an integer; adjust q spacing")
        alpha.append(int(a))

    c_raw, ct_raw = [], []
    for a_col in range(1, m + 1):
        scale = Fraction(base ** gamma[a_col - 1])
        if _dominant_is_large(m, a_col, assignment):
            c_raw.append(2 * scale)
            ct_raw.append(scale)
        else:
            c_raw.append(scale)
            ct_raw.append(2 * scale)

    # delta: well below the smallest reverse-diagonal row term, so it never
    # disturbs the dominance ordering
    dominants = [
        Fraction(c_raw[m - t], q[m - t] ** t) for t in range(1, m + 1)
    ]
    alpha_min = min(alpha) if alpha else 1
    delta_raw = min(dominants) / base ** (alpha_min + 1)

    norm = 2 * max(sum(c_raw), sum(ct_raw) + delta_raw)
    return T12Constants(
        m=m, b=b, base=base, strategy=strategy, assignment=assignment,
        p=[1] * m, q=list(q),
        c=[v / norm for v in c_raw],
        c_tilde=[v / norm for v in ct_raw],
        delta=delta_raw / norm,
        normalization=norm,
        gamma=gamma,
        alpha=alpha,
    )


def make_constants(m: int, strategy: str = "paper", assignment: str = "row") -> T12Constants:
    if m < 1:
        raise ValueError("m must be >= 1")
    if strategy == "paper":
        b = m
        exponents = [_factorial(b + i - 1) for i in range(1, m + 1)]
        q = [10 ** e for e in exponents]
        return _assemble(m, b, 10, strategy, assignment, q, exponents)
    if strategy == "compact":
        return _compact_search(m, assignment)
    raise ValueError(f"unknown strategy {strategy!r}")


_COMPACT_Q_EXPONENTS = (1, 2, 3, 4, 5)  # q in {2, 4, 8, 16, 32}
_COMPACT_G_MAX = 10                      # multiplier exponents 2^0 .. 2^10


def _compact_search(m: int, assignment: str) -> T12Constants:
    """Bounded exact search for small power-of-two constants.

    Iterates candidates in a fixed order and returns the first whose strict
    inequality system and row dominance verify exactly, so the result is
    deterministic and materializable.
    """
    for q_exp in combinations(_COMPACT_Q_EXPONENTS, m):
        q = [2 ** e for e in q_exp]
        for g in product(range(_COMPACT_G_MAX + 1), repeat=m):
            c_raw, ct_raw = [], []
            for a_col in range(1, m + 1):
                scale = Fraction(2 ** g[a_col - 1])
                if _dominant_is_large(m, a_col, assignment):
                    c_raw.append(2 * scale)
                    ct_raw.append(scale)
                else:
                    c_raw.append(scale)
                    ct_raw.append(2 * scale)
            dominants = [Fraction(c_raw[m - t], q[m - t] ** t) for t in range(1, m + 1)]
            delta_raw = min(dominants) / 4
            if not _system_holds(m, q, c_raw, ct_raw, delta_raw, strict=True):
                continue
            if not _dominance_holds(m, q, c_raw, delta_raw):
                continue
            norm = 2 * max(sum(c_raw), sum(ct_raw) + delta_raw)
            return T12Constants(
                m=m, b=0, base=2, strategy="compact", assignment=assignment,
                p=[1] * m, q=q,
                c=[v / norm for v in c_raw],
                c_tilde=[v / norm for v in ct_raw],
                delta=delta_raw / norm,
                normalization=norm,
                gamma=list(g),
                alpha=[],
            )
    raise CompactSearchError(f"no compact witness found for m={m} within search bounds")


def _row_sums(m: int, q: Sequence[int], coef: Sequence[Fraction], r: int) -> Fraction:
    return sum((coef[j] / Fraction(q[j]) ** r for j in range(m)), ZERO)


def _system_holds(m, q, c, ct, delta, strict: bool) -> bool:
    for r in range(1, m + 1):
        lhs = _row_sums(m, q, c, r)
        rhs = _row_sums(m, q, ct, r)
        if r % 2 == 1:
            ok = lhs > rhs + delta if strict else lhs >= rhs + delta
        else:
            ok = lhs < rhs if strict else lhs <= rhs
        if not ok:
            return False
    return True


def _dominance_holds(m, q, c, delta) -> bool:
    for r in range(1, m + 1):
        a = m - r + 1
        dom = c[a - 1] / Fraction(q[a - 1]) ** r
        others = sum(
            (c[j] / Fraction(q[j]) ** r for j in range(m) if j != a - 1), ZERO
        )
        if not dom > others + delta:
            return False
    return True


@dataclass
class InequalityRow:
    r: int
    direction: str          # ">=" (odd rows, with delta) or "<=" (even rows)
    lhs: Fraction
    rhs: Fraction
    holds: bool
    holds_strict: bool
    dominant_term: Fraction
    off_diagonal_sum: Fraction
    dominance_ok: bool

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "direction": self.direction,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "holds": self.holds,
            "holds_strict": self.holds_strict,
            "dominant_term": format_rational(self.dominant_term),
            "off_diagonal_sum": format_rational(self.off_diagonal_sum),
            "dominance_ok": self.dominance_ok,
        }


@dataclass
class InequalityReport:
    m: int
    passed: bool
    rows: List[InequalityRow]
    violated_row: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "passed": self.passed,
            "violated_row": self.violated_row,
            "rows": [row.to_json() for row in self.rows],
        }


def verify_inequality_system(constants: T12Constants) -> InequalityReport:
    """Exactly evaluate every row of the alternating system, plus the
    row-dominance ledger for the reverse-diagonal terms."""
    m, q, c, ct, delta = (
        constants.m, constants.q, constants.c, constants.c_tilde, constants.delta,
    )
    rows = []
    violated = None
    for r in range(1, m + 1):
        lhs = _row_sums(m, q, c, r)
        rhs = _row_sums(m, q, ct, r)
        if r % 2 == 1:
            direction = ">="
            holds = lhs >= rhs + delta
            holds_strict = lhs > rhs + delta
        else:
            direction = "<="
            holds = lhs <= rhs
            holds_strict = lhs < rhs
        a = m - r + 1
        dom = c[a - 1] / Fraction(q[a - 1]) ** r
        others = sum((c[j] / Fraction(q[j]) ** r for j in range(m) if j != a - 1), ZERO)
        rows.append(InequalityRow(
            r=r, direction=direction, lhs=lhs, rhs=rhs, holds=holds,
            holds_strict=holds_strict, dominant_term=dom,
            off_diagonal_sum=others, dominance_ok=dom > others + delta,
        ))
        if not holds and violated is None:
            violated = r
    return InequalityReport(m=m, passed=violated is None, rows=rows, violated_row=violated)


# ---------------------------------------------------------------------------
# Families


@dataclass
class T12Family:
    constants: T12Constants
    n_max: int
    backend: str                    # "explicit" | "formula"
    c_limsup: Fraction
    d: List[Fraction]               # offsets of the A components
    d_tilde: List[Fraction]         # offsets of the B components
    A: Optional[List[IntervalSet]] = None        # explicit only, index n-1
    B: Optional[List[IntervalSet]] = None
    floats: Optional[List[IntervalSet]] = None   # K_n, explicit only
    blocked: Optional[List[IntervalSet]] = None  # union of shrunk H_n copies, B side
    cursors: List[Fraction] = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.constants.m


def _collect_float(free: IntervalSet, cursor: Fraction, width: Fraction):
    """Greedy left-to-right fill of `width` mass from `free`, starting at the
    cursor and wrapping past 1 at most once.  Returns (pieces, new cursor)."""
    if free.measure() < width:
        raise ValueError("not enough free room for the floating interval")
    pieces = []
    remaining = width
    end = cursor
    for lo, hi in free.pairs:
        if hi <= cursor:
            continue
        start = max(lo, cursor)
        take = min(hi - start, remaining)
        if take > 0:
            pieces.append((start, start + take))
            remaining -= take
            end = start + take
        if remaining == 0:
            break
    if remaining > 0:  # wrap around and fill from the left edge, up to the cursor
        for lo, hi in free.pairs:
            if lo >= cursor:
                break
            seg_hi = min(hi, cursor)
            take = min(seg_hi - lo, remaining)
            if take > 0:
                pieces.append((lo, lo + take))
                remaining -= take
                end = lo + take
            if remaining == 0:
                break
    assert remaining == 0
    if end >= ONE:
        end = ZERO
    return IntervalSet(pieces), end


def build_t12_family(
    constants: T12Constants,
    n_max: int,
    backend: str = "formula",
    c_limsup=ONE,
    interval_cap: int = 10 ** 6,
) -> T12Family:
    c_limsup = Fraction(c_limsup)
    if not ZERO < c_limsup <= ONE:
        raise ValueError("c_limsup must lie in (0, 1]")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    m = constants.m
    d = [sum(constants.c[:j], ZERO) for j in range(m)]
    dt = [sum(constants.c_tilde[:j], ZERO) for j in range(m)]
    if constants.c[-1] + d[-1] > 1 or sum(constants.c_tilde, constants.delta) > 1:
        raise ValueError("components do not fit in [0,1] after normalization")
    fam = T12Family(
        constants=constants, n_max=n_max, backend=backend,
        c_limsup=c_limsup, d=d, d_tilde=dt,
    )
    if backend == "formula":
        return fam
    if backend != "explicit":
        raise ValueError(f"unknown backend {backend!r}")

    if max(constants.q) ** (n_max - 1) > interval_cap:
        raise ValueError(
            "explicit backend cannot materialize these q values; "
            "use compact constants or the formula backend"
        )
    levels = [
        build_nested_explicit(NestedParams(constants.p[j], constants.q[j]), n_max,
                              cap=interval_cap)
        for j in range(m)
    ]
    a_sets, b_sets, floats, blocked_all = [], [], [], []
    cursor = ZERO
    cursors = []
    for n in range(1, n_max + 1):
        a_n = union_all(
            scale_translate(levels[j][n - 1].G, constants.c[j], d[j]) for j in range(m)
        )
        g_part = union_all(
            scale_translate(levels[j][n - 1].G, constants.c_tilde[j], dt[j])
            for j in range(m)
        )
        blocked = union_all(
            scale_translate(levels[j][n - 1].H, constants.c_tilde[j], dt[j])
            for j in range(m)
        )
        k_n, cursor = _collect_float(
            complement(blocked), cursor, constants.delta / n
        )
        cursors.append(cursor)
        a_sets.append(a_n)
        b_sets.append(union(g_part, k_n))
        floats.append(k_n)
        blocked_all.append(blocked)
    if c_limsup != 1:
        a_sets = [scale_translate(s, c_limsup) for s in a_sets]
        b_sets = [scale_translate(s, c_limsup) for s in b_sets]
        floats = [scale_translate(s, c_limsup) for s in floats]
        blocked_all = [scale_translate(s, c_limsup) for s in blocked_all]
    fam.A, fam.B, fam.floats, fam.blocked = a_sets, b_sets, floats, blocked_all
    fam.cursors = cursors
    return fam


def place_floating_interval(fam: T12Family, n: int) -> IntervalSet:
    """The floating interval K_n recorded during the sequential build."""
    if fam.backend != "explicit" or fam.floats is None:
        raise ValueError("floating intervals exist only on the explicit backend")
    return fam.floats[n - 1]


def _check_increasing(indices: Sequence[int]):
    if not indices:
        raise ValueError("need at least one index")
    if any(i < 1 for i in indices) or any(
        a >= b for a, b in zip(indices, indices[1:])
    ):
        raise ValueError(f"indices must be strictly increasing: {indices}")


@dataclass
class IntersectionBounds:
    lower: Fraction
    upper: Fraction
    explicit: Optional[Fraction] = None

    def to_json(self) -> dict:
        data = {"lower": format_rational(self.lower), "upper": format_rational(self.upper)}
        if self.explicit is not None:
            data["explicit"] = format_rational(self.explicit)
        return data


def intersection_measure(fam: T12Family, indices: Sequence[int], side: str) -> IntersectionBounds:
    """Closed-form intersection measure for a strictly increasing index tuple.

    The A side is exact (lower == upper).  The B side is bracketed: the float
    adds at most delta/i_r.  On the explicit backend the materialized measure
    is returned as well.
    """
    _check_increasing(indices)
    cst = fam.constants
    r = len(indices)
    i_r = indices[-1]
    if side == "A":
        value = fam.c_limsup * sum(
            (cst.c[j] * Fraction(cst.p[j] ** r, cst.q[j] ** r * i_r) for j in range(cst.m)),
            ZERO,
        )
        lower = upper = value
        sets = fam.A
    elif side == "B":
        lower = fam.c_limsup * sum(
            (cst.c_tilde[j] * Fraction(cst.p[j] ** r, cst.q[j] ** r * i_r)
             for j in range(cst.m)),
            ZERO,
        )
        upper = lower + fam.c_limsup * cst.delta / i_r
        sets = fam.B
    else:
        raise ValueError(f"side must be 'A' or 'B', not {side!r}")
    explicit = None
    if fam.backend == "explicit" and max(indices) <= fam.n_max:
        explicit = intersect_all(sets[i - 1] for i in indices).measure()
    return IntersectionBounds(lower=lower, upper=upper, explicit=explicit)


@dataclass
class T12ClaimsReport:
    m: int
    depth: int
    passed: bool
    checks: int
    witness: Optional[Tuple[int, ...]] = None
    detail: str = ""
    tail_bounds: List[Tuple[int, Fraction]] = field(default_factory=list)
    float_progress: List[Tuple[int, Fraction]] = field(default_factory=list)

    def to_json(self) -> dict:
        data = {
            "m": self.m,
            "depth": self.depth,
            "passed": self.passed,
            "checks": self.checks,
            "detail": self.detail,
            "tail_bounds": [[n, format_rational(v)] for n, v in self.tail_bounds],
            "float_progress": [[n, format_rational(v)] for n, v in self.float_progress],
        }
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


def verify_t12_claims(fam: T12Family, depth: int) -> T12ClaimsReport:
    """Strict alternating comparison of A and B intersection measures over all
    increasing tuples of length r <= m from {1..depth}, plus the finite tail
    and float-coverage surrogates for the limsup statements.

    On the explicit backend every closed form is additionally cross-checked
    against the materialized sets, and each float is checked for width delta/n
    and disjointness from the shrunk H copies.
    """
    cst = fam.constants
    m = cst.m
    checks = 0
    for r in range(1, m + 1):
        for idx in combinations(range(1, depth + 1), r):
            a = intersection_measure(fam, idx, "A")
            b = intersection_measure(fam, idx, "B")
            checks += 1
            if r % 2 == 1:
                ok = a.lower > b.upper
            else:
                ok = a.lower < b.lower
            if not ok:
                return T12ClaimsReport(m, depth, False, checks, idx,
                                       detail=f"alternating inequality fails at r={r}")
            if a.explicit is not None and a.explicit != a.lower:
                return T12ClaimsReport(m, depth, False, checks, idx,
                                       detail="explicit A measure disagrees with closed form")
            if b.explicit is not None and not b.lower <= b.explicit <= b.upper:
                return T12ClaimsReport(m, depth, False, checks, idx,
                                       detail="explicit B measure escapes its bracket")
    if fam.backend == "explicit":
        for n in range(1, min(depth, fam.n_max) + 1):
            k_n = fam.floats[n - 1]
            if k_n.measure() != fam.c_limsup * cst.delta / n:
                return T12ClaimsReport(m, depth, False, checks,
                                       detail=f"float K_{n} has the wrong width")
            if intersect(k_n, fam.blocked[n - 1]):
                return T12ClaimsReport(m, depth, False, checks,
                                       detail=f"float K_{n} meets a shrunk H copy")
    total_c = sum(cst.c, ZERO)
    tail = [(n, fam.c_limsup * total_c / n) for n in range(1, depth + 1)]
    progress = []
    acc = ZERO
    for n in range(1, depth + 1):
        acc += cst.delta / n
        progress.append((n, acc))
    return T12ClaimsReport(m, depth, True, checks,
                           tail_bounds=tail, float_progress=progress)


def measure_tables(fam: T12Family, depth: int, max_len: Optional[int] = None):
    """Closed-form measure tables for the family: exact values for A, upper
    bounds for B.

    Tuple length is capped at m by default: the alternating comparison between
    the two tables is only guaranteed up to length m, which is the whole point
    of the construction.
    """
    from .bounds import MeasureTable

    limit = fam.m if max_len is None else max_len
    table_a = MeasureTable(n=depth)
    table_b = MeasureTable(n=depth)
    for r in range(1, limit + 1):
        for idx in combinations(range(1, depth + 1), r):
            a = intersection_measure(fam, idx, "A")
            b = intersection_measure(fam, idx, "B")
            table_a.entries[idx] = a.lower
            table_b.entries[idx] = b.upper
    return table_a, table_b
