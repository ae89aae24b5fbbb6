from fractions import Fraction

import pytest

from limsuplab import blocks
from limsuplab.intervals import EMPTY, IntervalSet


def test_block_index_arithmetic():
    assert blocks.block_bounds(2, 1) == (1, 3)
    assert blocks.block_bounds(2, 2) == (4, 12)
    assert blocks.block_of(2, 3) == 1
    assert blocks.block_of(2, 4) == 2
    # third element is the parent's block number
    assert blocks.index_maps(2, 12) == (3, 3, 1)
    assert blocks.index_maps(3, 21) == (5, 1, 2)
    with pytest.raises(ValueError):
        blocks.block_bounds(2, 0)


def test_equalities_and_violating_tuple_m2():
    fam = blocks.build_block_family(2, 2)
    report = blocks.verify_block_equalities(fam, 2)
    assert report.passed
    assert report.checks == 12 + 66
    hit = blocks.find_violating_tuple(fam, 3)
    assert hit is not None
    idx, a, b = hit
    assert idx == (1, 2, 3)
    assert (a, b) == (0, Fraction(1, 4))


def test_lmax_beyond_m_rejected():
    fam = blocks.build_block_family(2, 1)
    with pytest.raises(ValueError):
        blocks.verify_block_equalities(fam, 3)


def test_block_unions_and_nesting():
    fam = blocks.build_block_family(3, 2)
    unions = blocks.tail_union_measures(fam)
    assert unions == [
        (1, Fraction(7, 8), Fraction(1)),
        (2, Fraction(49, 64), Fraction(1)),
    ]
    assert blocks.block_union_nesting_holds(fam)


def test_scaling():
    whole = blocks.build_block_family(2, 2)
    half = blocks.build_block_family(2, 2, Fraction(1, 2))
    for s_whole, s_half in zip(whole.A, half.A):
        assert s_half.measure() == s_whole.measure() / 2
    for (_, ua, ub), (_, va, vb) in zip(
        blocks.tail_union_measures(whole), blocks.tail_union_measures(half)
    ):
        assert (va, vb) == (ua / 2, ub / 2)
    # l-wise equalities survive the scaling
    assert blocks.verify_block_equalities(half, 2).passed
    empty = blocks.build_block_family(2, 2, Fraction(0))
    assert all(s == EMPTY for s in empty.A + empty.B)
    with pytest.raises(ValueError):
        blocks.build_block_family(2, 2, Fraction(3, 2))


def test_replicator_independence():
    fam = blocks.build_block_family(2, 2)
    report = blocks.verify_replicator_independence(fam, 2, (1, 2), 1)
    assert report.passed and report.precondition_ok
    assert report.lhs_e == report.rhs_e
    assert report.lhs_f == report.rhs_f
    # out-of-range replicator index is reported, not raised
    bad = blocks.verify_replicator_independence(fam, 3, (1,), 1)
    assert not bad.precondition_ok


def test_json_round_trip_and_tamper_detection():
    fam = blocks.build_block_family(2, 2, Fraction(1, 2))
    data = fam.to_json()
    again = blocks.family_from_json(data)
    assert again.A == fam.A and again.B == fam.B
    data["A"][0] = IntervalSet([(0, Fraction(1, 8))]).to_json()
    with pytest.raises(ValueError):
        blocks.family_from_json(data)


def test_resource_cap():
    with pytest.raises(ValueError):
        blocks.build_block_family(2, 9)
