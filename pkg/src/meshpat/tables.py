"""Published values used as golden data by the verify suites and tests.

Polynomials are coefficient lists, ascending in x, transcribed as printed.
Entries known to be misprinted are kept verbatim and listed in ``TYPOS`` so
callers can compare them against the oracle instead of byte-for-byte.
"""
from __future__ import annotations

import math

from .poly import IntPoly

# R_n(x) for n = 1..8
GOLDEN: dict[str, dict[int, list[int]]] = {
    "1,0,1,0": {
        1: [1], 2: [2], 3: [5, 1], 4: [14, 8, 2], 5: [42, 46, 26, 6],
        6: [132, 232, 220, 112, 0, 24],  # printed as 24x^5
        7: [429, 1093, 1527, 1275, 596, 120],
        8: [1430, 4944, 9436, 11384, 8638, 3768, 720],
    },
    "1,0,2,0": {
        1: [1], 2: [2], 3: [6], 4: [22, 2], 5: [90, 26, 4],
        6: [394, 232, 82, 12],
        7: [1806, 1776, 1062, 348, 48],
        8: [8558, 12546, 11118, 6022, 1836, 240],
    },
    "2,0,2,0": {
        1: [1], 2: [2], 3: [6], 4: [24], 5: [116, 4], 6: [632, 80, 8],
        7: [3720, 1056, 240, 24],
        8: [23072, 11680, 4480, 992, 96],
    },
    "1,0,1,1": {
        1: [1], 2: [2], 3: [6], 4: [20, 4], 5: [70, 42, 8],
        6: [252, 300, 144, 24],
        7: [924, 1812, 1572, 636, 96],
        8: [3432, 9960, 13440, 9576, 3432, 480],
    },
    "1,1,1,1": {
        1: [1], 2: [2], 3: [6], 4: [24], 5: [104, 16], 6: [464, 224, 32],
        7: [2088, 2088, 768, 96],
        8: [9392, 16096, 11056, 3392, 384],
    },
}

# R_n^(k<=max) as (multiplier, polynomial): the series displays print
# n! * [t^n] as multiplier * polynomial.
KMAX_SERIES: dict[int, dict[int, tuple[int, list[int]]]] = {
    2: {
        3: (1, [5, 1]), 4: (1, [17, 6, 1]), 5: (1, [74, 35, 10, 1]),
        6: (1, [394, 225, 85, 15, 1]),
        7: (1, [2484, 1624, 735, 175, 21, 1]),
        8: (1, [18108, 13132, 6769, 1960, 322, 28, 1]),
        9: (1, [149904, 118124, 67284, 22449, 4536, 546, 36, 1]),
    },
    3: {
        4: (2, [11, 1]), 5: (2, [50, 9, 1]), 6: (2, [274, 71, 14, 1]),
        7: (2, [1764, 580, 155, 20, 1]),
        8: (2, [13068, 5104, 1665, 295, 27, 1]),
        # constant printed as 100584; the coefficients must sum to 9!/2 = 181440
        9: (2, [100584, 48860, 18424, 4025, 511, 35, 1]),
    },
    4: {
        5: (6, [19, 1]), 6: (6, [107, 12, 1]), 7: (6, [702, 119, 18, 1]),
        8: (6, [5274, 1175, 245, 25, 1]),
        9: (6, [44712, 12154, 3135, 445, 33, 1]),
    },
}

# R_n^(1,0,1,1) over permutations containing the consecutive block n1, n = 2..10
N1_1011: dict[int, list[int]] = {
    2: [1], 3: [2], 4: [5, 1], 5: [14, 8, 2], 6: [41, 50, 23, 6],
    7: [122, 268, 214, 92, 24],  # printed "92x^3_24x^4"
    8: [365, 1283, 1689, 1117, 466, 120],
    9: [1094, 5660, 11412, 11656, 6934, 2844, 720],  # printed "11412" without x^2
    10: [3281, 23524, 68042, 102880, 89849, 49996, 20268, 5040],
}

# (table, n) entries that are not byte-exact in print
TYPOS = {("1,0,1,0", 6), ("N1_1011", 7), ("N1_1011", 9), ("kmax3", 9)}

SEQUENCES: dict[str, list[int]] = {
    "catalan": [1, 2, 5, 14, 42, 132, 429, 1430],
    "large_schroeder": [1, 2, 6, 22, 90, 394, 1806, 8558],
    "kmax2_at_0": [1, 2, 5, 17, 74, 394, 2484, 18108, 149904],
    "kmax2_linear_from_3": [1, 6, 35, 225, 1624, 13132, 118124],
    "n1_1011_at_0_from_2": [1, 2, 5, 14, 41, 122, 365, 1094, 3281],
}


def golden(spec: str, n: int) -> IntPoly:
    return IntPoly(GOLDEN[spec][n])


def kmax_printed(k: int, n: int) -> IntPoly:
    """Printed R_n^(k<=max); below the first displayed polynomial the series is
    1 + t + ... + t^k, i.e. R_n = n!."""
    rows = KMAX_SERIES[k]
    if n in rows:
        mult, coeffs = rows[n]
        return mult * IntPoly(coeffs)
    if n <= k:
        return IntPoly.const(math.factorial(n))
    raise KeyError(n)
