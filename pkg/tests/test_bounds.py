import io
import random
from fractions import Fraction
from itertools import combinations

import pytest

from limsuplab import bounds
from limsuplab.bounds import MeasureTable, TableError
from limsuplab.intervals import FULL, IntervalSet

from conftest import random_sets

HALF = Fraction(1, 2)


def _pairwise_independent_half_table(n=4):
    table = MeasureTable(n=n)
    for i in range(1, n + 1):
        table.add((i,), HALF)
    for idx in combinations(range(1, n + 1), 2):
        table.add(idx, Fraction(1, 4))
    return table


def test_add_validation():
    table = MeasureTable(n=0)
    table.add((1, 2), Fraction(1, 3))
    with pytest.raises(TableError):
        table.add((2, 1), HALF)
    with pytest.raises(TableError):
        table.add((1, 2), HALF)
    with pytest.raises(TableError):
        table.add((3,), Fraction(3, 2))
    with pytest.raises(TableError):
        table.add((0, 1), HALF)
    with pytest.raises(TableError):
        table.add((), HALF)


def test_get_names_missing_tuple():
    table = MeasureTable(n=2)
    with pytest.raises(TableError, match=r"\(1, 2\)"):
        table.get((1, 2))


def test_csv_round_trip_with_comments():
    table = _pairwise_independent_half_table()
    text = "# header comment\n\n" + table.to_csv()
    again = bounds.ingest_table(io.StringIO(text))
    assert again.entries == table.entries


def test_json_round_trip():
    table = _pairwise_independent_half_table()
    import json

    again = bounds.ingest_table(json.dumps(table.to_json()), fmt="json")
    assert again.entries == table.entries and again.n == table.n


def test_ingest_rejects_monotonicity_violation():
    text = "1;1/4\n2;1/4\n1,2;1/2\n"
    with pytest.raises(TableError, match="monotonicity"):
        bounds.ingest_table(text)


def test_from_sets_window():
    rng = random.Random(7)
    sets = random_sets(rng, 6)
    table = MeasureTable.from_sets(sets, max_len=3, window=2)
    assert all(k[-1] - k[0] <= 1 for k in table.entries)
    for i, s in enumerate(sets, start=1):
        assert table.get((i,)) == s.measure()


def test_kochen_stone_identical_full_sets():
    table = MeasureTable.from_sets([FULL] * 5, max_len=2)
    for n in range(1, 6):
        assert bounds.kochen_stone_prefix(table, n) == 1


def test_kochen_stone_pairwise_independent_half():
    table = _pairwise_independent_half_table(4)
    assert bounds.kochen_stone_prefix(table, 4) == Fraction(4, 5)


def test_kochen_stone_degenerate_zero():
    table = MeasureTable(n=2)
    table.add((1,), Fraction(0))
    table.add((2,), Fraction(0))
    table.add((1, 2), Fraction(0))
    assert bounds.kochen_stone_prefix(table, 2) == 0


def test_kochen_stone_at_most_one_on_random_tables():
    rng = random.Random(20240818)
    for _ in range(200):
        table = MeasureTable.from_sets(random_sets(rng, 4), max_len=2)
        assert bounds.kochen_stone_prefix(table, 4) <= 1


def _brute_force_frolov(table, n):
    s1 = sum(table.get((i,)) for i in range(1, n + 1))
    s2 = 2 * sum(table.get(idx) for idx in combinations(range(1, n + 1), 2))
    s3 = 6 * sum(table.get(idx) for idx in combinations(range(1, n + 1), 3))
    d1 = (n - 1) * s1 - s2
    d2 = (n - 2) * s2 - s3
    bound = None if d1 + d2 == 0 else d1 * d1 / (n * (d1 + d2)) + s1 / n
    return s1, s2, s3, d1, d2, bound


def test_frolov_disjoint_triple():
    quarter = Fraction(1, 4)
    sets = [
        IntervalSet([(0, quarter)]),
        IntervalSet([(quarter, HALF)]),
        IntervalSet([(HALF, Fraction(3, 4))]),
    ]
    table = MeasureTable.from_sets(sets, max_len=3)
    f = bounds.frolov_quantities(table, 3)
    assert f.bound == Fraction(3, 4)
    assert not f.degenerate


def test_frolov_all_ones_degenerate():
    table = MeasureTable.from_sets([FULL] * 4, max_len=3)
    f = bounds.frolov_quantities(table, 4)
    assert f.degenerate and f.bound is None
    assert f.delta1 == 0 and f.delta2 == 0


def test_frolov_matches_brute_force_on_random_tables():
    rng = random.Random(20240819)
    for _ in range(50):
        table = MeasureTable.from_sets(random_sets(rng, 4), max_len=3)
        f = bounds.frolov_quantities(table, 4)
        assert (f.s1, f.s2, f.s3, f.delta1, f.delta2, f.bound) == \
            _brute_force_frolov(table, 4)


def test_frolov_needs_three_sets():
    with pytest.raises(TableError):
        bounds.frolov_quantities(_pairwise_independent_half_table(), 2)


def test_bounds_report_csv():
    table = MeasureTable.from_sets([FULL] * 4, max_len=3)
    report = bounds.bounds_report(table, 4, kochen_stone=True, frolov=True)
    assert report.ks_running_max == 1
    csv = report.to_csv()
    lines = csv.strip().splitlines()
    assert lines[0] == "n,ks_ratio,frolov_bound"
    assert len(lines) == 5
    # degenerate bound renders as an empty field
    assert lines[4].endswith(",")
