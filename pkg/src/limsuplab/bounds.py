"""Classical limsup lower bounds evaluated on exact measure tables.

A MeasureTable maps sorted distinct index tuples to exact rational measures.
The Kochen-Stone ratio needs singletons and pairs; the triple-intersection
bound additionally needs triples.  Tables are produced from interval families
or ingested from CSV ("i1,i2,...;p/q" rows) / JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from .intervals import IntervalSet, format_rational, intersect, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)

IndexTuple = Tuple[int, ...]


class TableError(ValueError):
    """Invalid measure-table data: parse errors or invariant violations."""


@dataclass
class MeasureTable:
    n: int
    entries: Dict[IndexTuple, Fraction] = field(default_factory=dict)

    def get(self, indices: Sequence[int]) -> Fraction:
        key = tuple(indices)
        try:
            return self.entries[key]
        except KeyError:
            raise TableError(f"table has no entry for tuple {key}") from None

    def pair(self, s: int, t: int) -> Fraction:
        # diagonal convention: mu(A_s n A_s) = mu(A_s)
        if s == t:
            return self.get((s,))
        return self.get((min(s, t), max(s, t)))

    def add(self, indices: Sequence[int], value: Fraction):
        key = tuple(indices)
        if len(key) < 1:
            raise TableError("empty index tuple")
        if any(i < 1 for i in key):
            raise TableError(f"indices must be >= 1: {key}")
        if any(a >= b for a, b in zip(key, key[1:])):
            raise TableError(f"indices must be strictly increasing: {key}")
        if key in self.entries:
            raise TableError(f"duplicate tuple {key}")
        if not ZERO <= value <= ONE:
            raise TableError(f"measure {value} for {key} is outside [0,1]")
        self.entries[key] = value
        self.n = max(self.n, key[-1])

    def validate_monotone(self):
        """Spot-check monotonicity on every stored one-step extension."""
        for key, value in self.entries.items():
            if len(key) < 2:
                continue
            for drop in range(len(key)):
                sub = key[:drop] + key[drop + 1:]
                parent = self.entries.get(sub)
                if parent is not None and value > parent:
                    raise TableError(
                        f"monotonicity violated: mu{key}={value} > mu{sub}={parent}"
                    )

    # -- construction ------------------------------------------------------

    @classmethod
    def from_sets(cls, sets: Sequence[IntervalSet], max_len: Optional[int] = None,
                  window: Optional[int] = None) -> "MeasureTable":
        """Exact table of intersection measures for a list of interval sets.

        max_len caps the tuple length; window restricts tuples to index ranges
        [k, k+window-1], which is what inclusion-exclusion over bounded ranges
        needs without paying for all 2^n subsets.  Zero-measure intersections
        propagate to supersets without further interval work.
        """
        n = len(sets)
        table = cls(n=n)
        limit = n if max_len is None else max_len

        def extend(prefix: IndexTuple, current: Optional[IntervalSet], start: int, stop: int):
            for i in range(start, stop + 1):
                if current is None:  # a previous level was already empty
                    nxt = None
                    value = ZERO
                else:
                    nxt = intersect(current, sets[i - 1]) if prefix else sets[i - 1]
                    if not nxt:
                        nxt = None
                    value = nxt.measure() if nxt is not None else ZERO
                key = prefix + (i,)
                if key not in table.entries:
                    table.entries[key] = value
                if len(key) < limit:
                    extend(key, nxt, i + 1, stop)

        if window is None:
            extend((), IntervalSet([(ZERO, ONE)]), 1, n)
        else:
            for k in range(1, n + 1):
                stop = min(n, k + window - 1)
                extend((k,), sets[k - 1] if sets[k - 1] else None, k + 1, stop)
                if (k,) not in table.entries:
                    table.entries[(k,)] = sets[k - 1].measure()
        # normalize: ensure singleton entries exist and are exact
        for i in range(1, n + 1):
            table.entries[(i,)] = sets[i - 1].measure()
        return table

    # -- serialization -----------------------------------------------------

    def to_csv(self) -> str:
        lines = []
        for key in sorted(self.entries, key=lambda k: (len(k), k)):
            idx = ",".join(str(i) for i in key)
            lines.append(f"{idx};{format_rational(self.entries[key])}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": {
                ",".join(str(i) for i in key): format_rational(self.entries[key])
                for key in sorted(self.entries, key=lambda k: (len(k), k))
            },
        }


def _parse_row(line: str, lineno: int) -> Tuple[IndexTuple, Fraction]:
    try:
        idx_part, val_part = line.split(";")
        indices = tuple(int(tok) for tok in idx_part.split(","))
        value = parse_rational(val_part.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise TableError(f"line {lineno}: cannot parse {line!r}: {exc}") from None
    return indices, value


def ingest_table(source, fmt: str = "csv") -> MeasureTable:
    """Read a table from a path, text, or file object; validates as it goes."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except (OSError, ValueError):
            text = str(source)
    table = MeasureTable(n=0)
    if fmt == "csv":
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            indices, value = _parse_row(line, lineno)
            table.add(indices, value)
    elif fmt == "json":
        data = json.loads(text)
        for key, val in data["entries"].items():
            indices = tuple(int(tok) for tok in key.split(","))
            table.add(indices, parse_rational(val))
        table.n = max(table.n, int(data.get("n", 0)))
    else:
        raise TableError(f"unknown table format {fmt!r}")
    table.validate_monotone()
    return table


# ---------------------------------------------------------------------------
# Bounds


def kochen_stone_prefix(table: MeasureTable, n: int) -> Fraction:
    """(sum_s mu(A_s))^2 / sum_{s,t} mu(A_s n A_t) for the prefix 1..n.

    The double sum includes the diagonal, where mu(A_s n A_s) = mu(A_s).
    Returns 0 when every measure is zero (degenerate prefix).
    """
    s1 = sum((table.get((s,)) for s in range(1, n + 1)), ZERO)
    s2_full = s1 + 2 * sum(
        (table.pair(s, t) for s in range(1, n + 1) for t in range(s + 1, n + 1)), ZERO
    )
    if s2_full == 0:
        return ZERO
    return s1 * s1 / s2_full


@dataclass
class FrolovQuantities:
    n: int
    s1: Fraction
    s2: Fraction
    s3: Fraction
    delta1: Fraction
    delta2: Fraction
    bound: Optional[Fraction]   # None when delta1 + delta2 = 0 (degenerate)

    @property
    def degenerate(self) -> bool:
        return self.bound is None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s1": format_rational(self.s1),
            "s2": format_rational(self.s2),
            "s3": format_rational(self.s3),
            "delta1": format_rational(self.delta1),
            "delta2": format_rational(self.delta2),
            "bound": None if self.bound is None else format_rational(self.bound),
            "degenerate": self.degenerate,
        }


def frolov_quantities(table: MeasureTable, n: int) -> FrolovQuantities:
    """The triple-intersection bound quantities s_1, s_2, s_3, delta_1, delta_2
    and the bound delta_1^2 / (n (delta_1 + delta_2)) + s_1 / n.

    The bound value is exact but its asymptotic hypotheses are not certifiable
    at finite n; callers should treat it as informational.
    """
    if n < 3:
        raise TableError("the triple-intersection bound needs n >= 3")
    s1 = sum((table.get((i,)) for i in range(1, n + 1)), ZERO)
    s2 = 2 * sum((table.get(idx) for idx in combinations(range(1, n + 1), 2)), ZERO)
    s3 = 6 * sum((table.get(idx) for idx in combinations(range(1, n + 1), 3)), ZERO)
    d1 = (n - 1) * s1 - s2
    d2 = (n - 2) * s2 - s3
    if d1 + d2 == 0:
        bound = None
    else:
        bound = d1 * d1 / (n * (d1 + d2)) + s1 / n
    return FrolovQuantities(n=n, s1=s1, s2=s2, s3=s3, delta1=d1, delta2=d2, bound=bound)


@dataclass
class BoundsReport:
    upto: int
    kochen_stone: List[Tuple[int, Fraction]] = field(default_factory=list)
    ks_running_max: Optional[Fraction] = None
    frolov: List[FrolovQuantities] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "upto": self.upto,
            "kochen_stone": [[n, format_rational(v)] for n, v in self.kochen_stone],
            "ks_running_max": None if self.ks_running_max is None
            else format_rational(self.ks_running_max),
            "frolov": [f.to_json() for f in self.frolov],
        }

    def to_csv(self) -> str:
        frolov_by_n = {f.n: f for f in self.frolov}
        lines = ["n,ks_ratio,frolov_bound"]
        for n, v in self.kochen_stone:
            f = frolov_by_n.get(n)
            fb = "" if f is None or f.bound is None else format_rational(f.bound)
            lines.append(f"{n},{format_rational(v)},{fb}")
        return "\n".join(lines) + "\n"


def bounds_report(table: MeasureTable, upto: int,
                  kochen_stone: bool = True, frolov: bool = False) -> BoundsReport:
    report = BoundsReport(upto=upto)
    if kochen_stone:
        running = ZERO
        for n in range(1, upto + 1):
            ratio = kochen_stone_prefix(table, n)
            running = max(running, ratio)
            report.kochen_stone.append((n, ratio))
        report.ks_running_max = running
    if frolov:
        for n in range(3, upto + 1):
            report.frolov.append(frolov_quantities(table, n))
    return report
