"""Codes, cocycles, module labels, lattices and exact q-series for the moonshine module."""

from .gf2core import BinaryWord, LinearCode, WeightEnumerator, dual, macwilliams_transform, weight_enumerator
from .qchar import QSeries

__all__ = [
    "BinaryWord",
    "LinearCode",
    "QSeries",
    "WeightEnumerator",
    "dual",
    "macwilliams_transform",
    "weight_enumerator",
]
