import random
from fractions import Fraction

import pytest

from limsuplab import blocks, inclusion_exclusion as ie, t12
from limsuplab.bounds import MeasureTable, TableError
from limsuplab.intervals import IntervalSet, union_all

from conftest import random_sets


def test_two_set_union():
    sets = [
        IntervalSet([(0, Fraction(1, 2))]),
        IntervalSet([(Fraction(1, 4), Fraction(3, 4))]),
    ]
    table = MeasureTable.from_sets(sets)
    assert ie.union_by_inclusion_exclusion(table, 1, 2) == Fraction(3, 4)


def test_union_matches_direct_measure_on_random_sets():
    rng = random.Random(99)
    sets = random_sets(rng, 6, grid=8)
    table = MeasureTable.from_sets(sets)
    for k in range(1, 7):
        for n in range(k, 7):
            direct = union_all(sets[k - 1:n]).measure()
            assert ie.union_by_inclusion_exclusion(table, k, n) == direct


def test_range_and_cap_validation():
    table = MeasureTable.from_sets(random_sets(random.Random(1), 3))
    with pytest.raises(ValueError):
        ie.union_by_inclusion_exclusion(table, 0, 2)
    with pytest.raises(ValueError):
        ie.union_by_inclusion_exclusion(table, 2, 1)
    with pytest.raises(ValueError):
        ie.union_by_inclusion_exclusion(table, 1, 3, cap=2)
    with pytest.raises(TableError):
        ie.union_by_inclusion_exclusion(MeasureTable(n=2), 1, 2)


def test_equal_tables_give_equal_unions():
    fam = blocks.build_block_family(2, 2)
    table_a = MeasureTable.from_sets(fam.A, max_len=2, window=2)
    table_b = MeasureTable.from_sets(fam.B, max_len=2, window=2)
    comparisons = ie.verify_thm_equal_unions(table_a, table_b, 12, 12, cap=2)
    assert comparisons
    assert all(c.relation == "equal" for c in comparisons)


def test_perturbed_entry_is_reported_with_witness():
    fam = blocks.build_block_family(2, 1)
    table_a = MeasureTable.from_sets(fam.A)
    table_b = MeasureTable.from_sets(fam.A)
    table_b.entries[(1, 2, 3)] += Fraction(1, 64)
    comparisons = ie.verify_thm_equal_unions(table_a, table_b, 1, 3)
    bad = [c for c in comparisons if c.relation == "violated"]
    assert bad
    assert bad[0].witness == (1, 2, 3)


def test_ordered_unions_on_alternating_tables():
    cst = t12.make_constants(1, strategy="compact")
    fam = t12.build_t12_family(cst, 5, backend="formula")
    table_a, table_b = t12.measure_tables(fam, 5)
    comparisons = ie.verify_thm_ordered_unions(table_a, table_b, 5, 5, cap=1)
    assert comparisons
    assert all(c.relation in ("equal", "lhs_ge_rhs") for c in comparisons)


def test_hypothesis_violation_raises_before_comparison():
    table_a = MeasureTable(n=2)
    table_b = MeasureTable(n=2)
    for i, (a, b) in enumerate([(Fraction(1, 4), Fraction(1, 2)),
                                (Fraction(1, 2), Fraction(1, 4))], start=1):
        table_a.add((i,), a)
        table_b.add((i,), b)
    with pytest.raises(ie.HypothesisViolation) as exc:
        ie.verify_thm_ordered_unions(table_a, table_b, 2, 2, cap=1)
    assert exc.value.indices == (1,)
