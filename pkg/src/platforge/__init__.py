"""platforge: highly twisted plats, augmented links, crossing-circle Dehn
filling, and bridge-number bounds as checkable combinatorics."""

from . import bounds, braid, canonical, codes, diagram, families, polyhedra

__version__ = "0.1.0"

__all__ = [
    "bounds",
    "braid",
    "canonical",
    "codes",
    "diagram",
    "families",
    "polyhedra",
]
