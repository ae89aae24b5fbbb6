"""Exact rational interval-set constructions for limsup measure (counter)examples.

Everything is computed with arbitrary-precision rational arithmetic: interval
algebra on [0,1), parity and iterated block families with matching
intersection measures, nested G/H systems with product intersection laws, the
alternating-inequality counterexample constants, and Kochen-Stone / triple-
intersection lower bound evaluation on exact measure tables.
"""

from .intervals import (
    EMPTY,
    FULL,
    IntervalSet,
    canonicalize,
    complement,
    format_rational,
    intersect,
    intersect_all,
    measure,
    parse_rational,
    scale_translate,
    tile,
    union,
    union_all,
)

__all__ = [
    "EMPTY",
    "FULL",
    "IntervalSet",
    "canonicalize",
    "complement",
    "format_rational",
    "intersect",
    "intersect_all",
    "measure",
    "parse_rational",
    "scale_translate",
    "tile",
    "union",
    "union_all",
]

__version__ = "0.1.0"
