"""Acceptance gate: ten criteria, each printing a single pass/fail line.

Every numeric check is exact rational equality; the only tolerances are the
wall-clock budgets, which are asserted with time.monotonic.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from limsuplab import blocks, bounds, cli, inclusion_exclusion as ie, nested, parity, t12
from limsuplab.bounds import MeasureTable
from limsuplab.intervals import FULL, union_all

from conftest import random_sets


_capture = None


@pytest.fixture(autouse=True)
def _live_reporting(capfd):
    # lets _report bypass pytest's capture so every criterion prints its line
    global _capture
    _capture = capfd
    yield
    _capture = None


def _report(num, ok, desc):
    line = f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {desc}"
    with _capture.disabled():
        print(line, flush=True)
    assert ok, line


def test_criterion_01_parity_families():
    ok = True
    for m in (2, 3, 4):
        start = time.monotonic()
        rep = parity.verify_parity_properties(parity.build_parity_family(m))
        elapsed = time.monotonic() - start
        ok &= rep.passed
        ok &= rep.union_d == 1 and rep.union_c == 1 - Fraction(1, 2 ** m)
        ok &= elapsed < 1.0
    _report(1, ok, "parity families m in {2,3,4}: unions and l-wise equalities, < 1 s each")


def test_criterion_02_block_equalities_and_violation():
    ok = True
    start = time.monotonic()
    fam23 = blocks.build_block_family(2, 3)
    rep23 = blocks.verify_block_equalities(fam23, 2)
    ok &= rep23.passed
    hit = blocks.find_violating_tuple(fam23, 3)
    ok &= hit is not None and hit[1:] == (Fraction(0), Fraction(1, 4))
    fam32 = blocks.build_block_family(3, 2)
    rep32 = blocks.verify_block_equalities(fam32, 3)
    ok &= rep32.passed and rep32.checks == 1350
    hit32 = blocks.find_violating_tuple(fam32, 4)
    ok &= hit32 is not None and hit32[1] != hit32[2]
    elapsed = time.monotonic() - start
    ok &= elapsed < 30.0
    _report(2, ok, "block families (2,3) and (3,2): 1350 exact equalities, "
                   "violating (m+1)-tuple found, < 30 s")


def test_criterion_03_block_unions_and_scaling():
    ok = True
    for m, K in ((2, 3), (3, 2)):
        fam = blocks.build_block_family(m, K)
        half = blocks.build_block_family(m, K, Fraction(1, 2))
        for (k, ua, ub), (_, va, vb) in zip(
            blocks.tail_union_measures(fam), blocks.tail_union_measures(half)
        ):
            ok &= ua == (1 - Fraction(1, 2 ** m)) ** k
            ok &= ub == 1
            ok &= (va, vb) == (ua / 2, ub / 2)
    _report(3, ok, "block unions (1-2^-m)^k and 1, halved exactly at c=1/2")


def test_criterion_04_nested_product_law():
    ok = True
    for p, q in ((3, 5), (2, 3), (1, 4)):
        rep = nested.verify_nested(nested.NestedParams(p, q), 5)
        ok &= rep.passed and rep.tuple_checks == 31
    _report(4, ok, "nested G/H (3,5),(2,3),(1,4) depth 5: product law exact on "
                   "all tuples, measures and nesting hold")


def test_criterion_05_alternating_inequality_systems():
    ok = True
    start = time.monotonic()
    for m in (2, 3, 4):
        rep = t12.verify_inequality_system(t12.make_constants(m, strategy="paper"))
        ok &= rep.passed
    col = t12.verify_inequality_system(
        t12.make_constants(3, strategy="paper", assignment="column")
    )
    ok &= col.passed
    elapsed = time.monotonic() - start
    ok &= elapsed < 10.0
    _report(5, ok, "alternating systems m in {2,3,4} (repaired assignment) and "
                   "m=3 original assignment, < 10 s")


def test_criterion_06_cross_backend_family():
    cst = t12.make_constants(1, strategy="compact")
    explicit = t12.build_t12_family(cst, 6, backend="explicit")
    formula = t12.build_t12_family(cst, 6, backend="formula")
    ok = True
    for r in range(1, 7):
        for idx in combinations(range(1, 7), r):
            a_e = t12.intersection_measure(explicit, idx, "A")
            a_f = t12.intersection_measure(formula, idx, "A")
            ok &= a_e.explicit == a_f.lower == a_f.upper
            b_e = t12.intersection_measure(explicit, idx, "B")
            b_f = t12.intersection_measure(formula, idx, "B")
            ok &= b_f.lower <= b_e.explicit <= b_f.upper
    for n in range(1, 7):
        k = t12.place_floating_interval(explicit, n)
        ok &= k.measure() == cst.delta / n
        ok &= not (k & explicit.blocked[n - 1])
    _report(6, ok, "compact m=1 family depth 6: explicit measures match A "
                   "closed forms and B brackets; floats exact and disjoint")


def test_criterion_07_first_bound_ratio():
    ok = True
    full = MeasureTable.from_sets([FULL] * 5, max_len=2)
    ok &= all(bounds.kochen_stone_prefix(full, n) == 1 for n in range(1, 6))
    rng = random.Random(1234)
    for _ in range(1000):
        table = MeasureTable.from_sets(random_sets(rng, 4), max_len=2)
        ok &= bounds.kochen_stone_prefix(table, 4) <= 1
    pairwise = MeasureTable(n=4)
    for i in range(1, 5):
        pairwise.add((i,), Fraction(1, 2))
    for idx in combinations(range(1, 5), 2):
        pairwise.add(idx, Fraction(1, 4))
    ok &= bounds.kochen_stone_prefix(pairwise, 4) == Fraction(4, 5)
    _report(7, ok, "pair-sum ratio: 1 on full sets, <= 1 on 1000 random tables, "
                   "4/5 on the pairwise-independent example")


def test_criterion_08_triple_bound_quantities():
    ok = True
    rng = random.Random(5678)
    for _ in range(100):
        table = MeasureTable.from_sets(random_sets(rng, 4), max_len=3)
        f = bounds.frolov_quantities(table, 4)
        s1 = sum(table.get((i,)) for i in range(1, 5))
        s2 = 2 * sum(table.get(x) for x in combinations(range(1, 5), 2))
        s3 = 6 * sum(table.get(x) for x in combinations(range(1, 5), 3))
        d1 = 3 * s1 - s2
        d2 = 2 * s2 - s3
        expect = None if d1 + d2 == 0 else d1 * d1 / (4 * (d1 + d2)) + s1 / 4
        ok &= (f.s1, f.s2, f.s3, f.delta1, f.delta2, f.bound) == \
            (s1, s2, s3, d1, d2, expect)
    from limsuplab.intervals import IntervalSet
    disjoint = [IntervalSet([(Fraction(t, 4), Fraction(t + 1, 4))]) for t in range(3)]
    f = bounds.frolov_quantities(MeasureTable.from_sets(disjoint, max_len=3), 3)
    ok &= f.bound == Fraction(3, 4)
    ones = bounds.frolov_quantities(MeasureTable.from_sets([FULL] * 4, max_len=3), 4)
    ok &= ones.degenerate
    _report(8, ok, "triple-sum quantities match brute force on 100 random "
                   "tables; 3/4 disjoint example; all-ones degenerate")


def test_criterion_09_inclusion_exclusion():
    ok = True
    fam = blocks.build_block_family(2, 2)  # 12 sets: the full width-12 range fits
    for side in (fam.A, fam.B):
        table = MeasureTable.from_sets(side)
        for k in range(1, 13):
            for n in range(k, 13):
                direct = union_all(side[k - 1:n]).measure()
                ok &= ie.union_by_inclusion_exclusion(table, k, n) == direct
    for m, K in ((2, 3), (3, 2)):
        fam2 = blocks.build_block_family(m, K)
        ta = MeasureTable.from_sets(fam2.A, max_len=m, window=m)
        tb = MeasureTable.from_sets(fam2.B, max_len=m, window=m)
        cmp13 = ie.verify_thm_equal_unions(ta, tb, fam2.size, fam2.size, cap=m)
        ok &= bool(cmp13) and all(c.relation == "equal" for c in cmp13)
    cst = t12.make_constants(1, strategy="compact")
    t12fam = t12.build_t12_family(cst, 6, backend="formula")
    ta, tb = t12.measure_tables(t12fam, 6)
    cmp14 = ie.verify_thm_ordered_unions(ta, tb, 6, 6, cap=cst.m)
    ok &= bool(cmp14) and all(c.relation in ("equal", "lhs_ge_rhs") for c in cmp14)
    _report(9, ok, "inclusion-exclusion equals direct unions (width <= 12); "
                   "equal-union and ordered-union verifiers pass")


def _battery(seed):
    chunks = []
    rep = parity.verify_parity_properties(parity.build_parity_family(3))
    chunks.append(cli._dump(rep.to_json()))
    fam = blocks.build_block_family(2, 2)
    chunks.append(cli._dump(blocks.verify_block_equalities(fam, 2).to_json()))
    chunks.append(cli._dump(nested.verify_nested(nested.NestedParams(3, 5), 4).to_json()))
    cst = t12.make_constants(2, strategy="paper")
    chunks.append(cli._dump(t12.verify_inequality_system(cst).to_json()))
    rng = random.Random(seed)
    table = MeasureTable.from_sets(random_sets(rng, 4), max_len=3)
    chunks.append(cli._dump(bounds.bounds_report(table, 4, frolov=True).to_json()))
    return "".join(chunks).encode()


def test_criterion_10_determinism():
    ok = _battery(42) == _battery(42)
    _report(10, ok, "two same-seed runs produce byte-identical reports")
