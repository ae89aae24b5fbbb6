import random
from fractions import Fraction

from limsuplab.intervals import IntervalSet


def random_interval_set(rng: random.Random, grid: int = 8) -> IntervalSet:
    """Random union of cells from an even grid over [0,1)."""
    pairs = [
        (Fraction(t, grid), Fraction(t + 1, grid))
        for t in range(grid)
        if rng.random() < 0.5
    ]
    return IntervalSet(pairs)


def random_sets(rng: random.Random, count: int, grid: int = 8):
    return [random_interval_set(rng, grid) for _ in range(count)]
