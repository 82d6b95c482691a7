"""Finite-ring workbench for UJ rings.

Rings are finite unital rings stored as Cayley tables over the carrier
``0..n-1``; build them with :mod:`finring.constructions` or the ring-spec language
in :mod:`finring.ringspec`.
"""

from .constructions import gf, group_algebra, matrix_ring, poly_quotient, product, triangular_ring, zmod
from .errors import FinRingError
from .predicates import UJVerdict, is_uj, is_uj_all_ways
from .ring_core import FiniteRing, jacobson_radical, units, validate_ring
from .ringspec import elaborate, parse_spec, print_spec

__all__ = [
    "FiniteRing",
    "FinRingError",
    "UJVerdict",
    "elaborate",
    "gf",
    "group_algebra",
    "is_uj",
    "is_uj_all_ways",
    "jacobson_radical",
    "matrix_ring",
    "parse_spec",
    "poly_quotient",
    "print_spec",
    "product",
    "triangular_ring",
    "units",
    "validate_ring",
    "zmod",
]

__version__ = "0.1.0"
