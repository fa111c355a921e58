"""Distributions of simple marked mesh pattern statistics over permutations."""
from .errors import InvalidInputError, ResourceLimitError
from .perm_core import (Bound, KMax, Permutation, QuadSpec, inverse, complement, matches,
                        matches_kmax, mmp_count, quad_orbit, quadrant_counts, reverse, statistics)
from .poly import BiPoly, EgfSeries, IntPoly
from .oracle import (ALL, ONE_BEFORE_N, PermClass, distribution, distributions,
                     kmax_distribution, q_distribution)

__version__ = "0.1.0"

__all__ = [
    "InvalidInputError", "ResourceLimitError", "Bound", "KMax", "Permutation", "QuadSpec",
    "inverse", "complement", "matches", "matches_kmax", "mmp_count", "quad_orbit",
    "quadrant_counts", "reverse", "statistics", "BiPoly", "EgfSeries", "IntPoly",
    "ALL", "ONE_BEFORE_N", "PermClass", "distribution", "distributions",
    "kmax_distribution", "q_distribution",
]
