"""Combinatorics of affine Deligne-Lusztig varieties for unramified groups."""

from .presets import build_root_datum
from .rootdata import RootDatum, WeylElement, levi

__all__ = ["RootDatum", "WeylElement", "build_root_datum", "levi"]
__version__ = "0.1.0"
