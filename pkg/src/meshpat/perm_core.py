"""Permutations, quadrant counts and simple marked mesh pattern matching.

Positions are 1-based throughout the public API. The point of ``sigma`` at
position ``i`` is ``(i, sigma[i])`` and the four quadrants around it are

    I   = later positions, larger values
    II  = earlier positions, larger values
    III = earlier positions, smaller values
    IV  = later positions, smaller values
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import InvalidInputError

__all__ = [
    "Permutation", "Bound", "QuadSpec", "KMax", "Stats",
    "reduce", "quadrant_counts", "matches", "matches_kmax", "mmp_count",
    "statistics", "reverse", "complement", "inverse", "quad_orbit",
    "insert_bottom", "insert_top", "SYMMETRY_ORDERS",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise InvalidInputError(f"not a permutation of 1..{len(word)}: {word}")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accept ``"471569283"`` (single digits) or ``"10 2 1 ..."`` / comma lists."""
        text = text.strip()
        if re.search(r"[\s,]", text):
            return cls(tuple(int(t) for t in re.split(r"[\s,]+", text) if t))
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __getitem__(self, i):
        return self.word[i]

    def __str__(self) -> str:
        if self.n < 10:
            return "".join(map(str, self.word))
        return " ".join(map(str, self.word))


def _as_perm(sigma) -> Permutation:
    return sigma if isinstance(sigma, Permutation) else Permutation(tuple(sigma))


def _check_position(sigma: Permutation, i: int) -> None:
    if not 1 <= i <= sigma.n:
        raise InvalidInputError(f"position {i} out of range 1..{sigma.n}")


# --------------------------------------------------------------------------
# pattern specifications
# --------------------------------------------------------------------------

_GE, _EQ, _EMPTY = "ge", "eq", "empty"


@dataclass(frozen=True, eq=False)
class Bound:
    """Constraint on one quadrant: at least m points, exactly m points, or none.

    ``Empty`` is kept as its own kind for display but compares and hashes
    equal to ``Exactly(0)``.
    """

    kind: str
    m: int = 0

    def __post_init__(self):
        if self.kind not in (_GE, _EQ, _EMPTY):
            raise InvalidInputError(f"unknown bound kind {self.kind!r}")
        if self.m < 0:
            raise InvalidInputError("bound must be non-negative")
        if self.kind == _EMPTY and self.m != 0:
            raise InvalidInputError("Empty bound carries no count")

    @classmethod
    def at_least(cls, m: int) -> "Bound":
        return cls(_GE, m)

    @classmethod
    def exactly(cls, m: int) -> "Bound":
        return cls(_EQ, m)

    @classmethod
    def empty(cls) -> "Bound":
        return cls(_EMPTY, 0)

    @classmethod
    def parse(cls, token) -> "Bound":
        """``3`` / ``ge:3`` -> at least 3, ``eq:3`` -> exactly 3, ``empty`` -> none."""
        if isinstance(token, Bound):
            return token
        if token is None:
            return cls.empty()
        if isinstance(token, int):
            return cls.at_least(token)
        tok = str(token).strip().lower()
        if tok in ("empty", "e", "∅", "{}"):
            return cls.empty()
        m = re.fullmatch(r"(ge:|eq:|=)?(\d+)", tok)
        if not m:
            raise InvalidInputError(f"cannot parse bound {token!r}")
        kind = _EQ if m.group(1) in ("eq:", "=") else _GE
        return cls(kind, int(m.group(2)))

    @property
    def is_empty(self) -> bool:
        return self.kind == _EMPTY or (self.kind == _EQ and self.m == 0)

    def accepts(self, count: int) -> bool:
        if self.kind == _GE:
            return count >= self.m
        return count == self.m

    def _key(self):
        return (_EQ, 0) if self.kind == _EMPTY else (self.kind, self.m)

    def __eq__(self, other):
        if not isinstance(other, Bound):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self) -> str:
        if self.kind == _EMPTY:
            return "empty"
        if self.kind == _EQ:
            return f"eq:{self.m}"
        return str(self.m)

    def __repr__(self) -> str:
        return f"Bound({self})"


BoundLike = Union[Bound, int, str, None]


@dataclass(frozen=True)
class QuadSpec:
    """Bounds for quadrants I, II, III, IV, i.e. the pattern MMP(a,b,c,d)."""

    q1: Bound
    q2: Bound
    q3: Bound
    q4: Bound

    def __post_init__(self):
        for name in ("q1", "q2", "q3", "q4"):
            object.__setattr__(self, name, Bound.parse(getattr(self, name)))

    @classmethod
    def of(cls, a: BoundLike, b: BoundLike, c: BoundLike, d: BoundLike) -> "QuadSpec":
        return cls(Bound.parse(a), Bound.parse(b), Bound.parse(c), Bound.parse(d))

    @classmethod
    def parse(cls, text: str) -> "QuadSpec":
        parts = [p for p in re.split(r"[\s,]+", text.strip().strip("()")) if p]
        if len(parts) != 4:
            raise InvalidInputError(f"spec needs four comma-separated bounds: {text!r}")
        return cls.of(*parts)

    @property
    def bounds(self) -> tuple[Bound, Bound, Bound, Bound]:
        return (self.q1, self.q2, self.q3, self.q4)

    def permuted(self, order: Sequence[int]) -> "QuadSpec":
        b = self.bounds
        return QuadSpec(*(b[j] for j in order))

    def accepts(self, counts: Sequence[int]) -> bool:
        return all(bd.accepts(c) for bd, c in zip(self.bounds, counts))

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.bounds)


@dataclass(frozen=True)
class KMax:
    """The MMP(k<=max, empty, 0, 0) variant."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError("k<=max pattern needs k >= 1")

    def __str__(self) -> str:
        return f"kmax:{self.k}"


Pattern = Union[QuadSpec, KMax]


# --------------------------------------------------------------------------
# basic operations
# --------------------------------------------------------------------------

def reduce(word: Iterable[int]) -> Permutation:
    """Order-isomorphic permutation of a word of distinct integers (``red``)."""
    word = list(word)
    if len(set(word)) != len(word):
        raise InvalidInputError(f"entries are not distinct: {word}")
    rank = {v: r for r, v in enumerate(sorted(word), start=1)}
    return Permutation(tuple(rank[v] for v in word))


def quadrant_counts(sigma, i: int) -> tuple[int, int, int, int]:
    sigma = _as_perm(sigma)
    _check_position(sigma, i)
    w = sigma.word
    v = w[i - 1]
    left_greater = sum(1 for u in w[: i - 1] if u > v)
    right_greater = sum(1 for u in w[i:] if u > v)
    left_less = (i - 1) - left_greater
    right_less = (sigma.n - i) - right_greater
    return (right_greater, left_greater, left_less, right_less)


def matches(sigma, i: int, spec: QuadSpec) -> bool:
    return spec.accepts(quadrant_counts(sigma, i))


def matches_kmax(sigma, i: int, k: int) -> bool:
    """Quadrant II empty and at least k larger entries up to the suffix maximum."""
    sigma = _as_perm(sigma)
    _check_position(sigma, i)
    if k < 1:
        raise InvalidInputError("k must be positive")
    w = sigma.word
    v = w[i - 1]
    if any(u > v for u in w[: i - 1]):
        return False
    suffix = w[i:]
    if not suffix or max(suffix) < v:
        return False
    j = suffix.index(max(suffix))
    return sum(1 for u in suffix[: j + 1] if u > v) >= k


def mmp_count(sigma, spec: Pattern) -> int:
    sigma = _as_perm(sigma)
    if isinstance(spec, KMax):
        return sum(matches_kmax(sigma, i, spec.k) for i in range(1, sigma.n + 1))
    return sum(matches(sigma, i, spec) for i in range(1, sigma.n + 1))


class Stats(NamedTuple):
    inv: int
    coinv: int
    rlmax: int
    cycle_count: int


def statistics(sigma) -> Stats:
    sigma = _as_perm(sigma)
    w, n = sigma.word, sigma.n
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])
    rlmax, best = 0, 0
    for v in reversed(w):
        if v > best:
            rlmax += 1
            best = v
    seen = [False] * (n + 1)
    cycles = 0
    for start in range(1, n + 1):
        if not seen[start]:
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = w[j - 1]
    return Stats(inv, n * (n - 1) // 2 - inv, rlmax, cycles)


# --------------------------------------------------------------------------
# symmetries
# --------------------------------------------------------------------------

def reverse(sigma) -> Permutation:
    return Permutation(tuple(reversed(_as_perm(sigma).word)))


def complement(sigma) -> Permutation:
    sigma = _as_perm(sigma)
    return Permutation(tuple(sigma.n + 1 - v for v in sigma.word))


def inverse(sigma) -> Permutation:
    sigma = _as_perm(sigma)
    out = [0] * sigma.n
    for i, v in enumerate(sigma.word, start=1):
        out[v - 1] = i
    return Permutation(tuple(out))


# The eight coordinate permutations of (a, b, c, d) from the dihedral action,
# as index tuples: (a,b,c,d), (d,a,b,c), (c,b,a,d), (b,a,d,c), (d,c,b,a),
# (a,d,c,b), (c,d,a,b), (b,c,d,a).
SYMMETRY_ORDERS: tuple[tuple[int, int, int, int], ...] = (
    (0, 1, 2, 3), (3, 0, 1, 2), (2, 1, 0, 3), (1, 0, 3, 2),
    (3, 2, 1, 0), (0, 3, 2, 1), (2, 3, 0, 1), (1, 2, 3, 0),
)


def quad_orbit(spec: QuadSpec) -> frozenset[QuadSpec]:
    return frozenset(spec.permuted(order) for order in SYMMETRY_ORDERS)


# --------------------------------------------------------------------------
# insertions used by the recursions
# --------------------------------------------------------------------------

def insert_bottom(sigma, i: int) -> Permutation:
    """Add 1 to every entry and put a new 1 at position i (1 <= i <= n+1)."""
    sigma = _as_perm(sigma)
    if not 1 <= i <= sigma.n + 1:
        raise InvalidInputError(f"slot {i} out of range 1..{sigma.n + 1}")
    w = [v + 1 for v in sigma.word]
    w.insert(i - 1, 1)
    return Permutation(tuple(w))


def insert_top(sigma, i: int) -> Permutation:
    """Put the new maximum n+1 at position i (1 <= i <= n+1)."""
    sigma = _as_perm(sigma)
    if not 1 <= i <= sigma.n + 1:
        raise InvalidInputError(f"slot {i} out of range 1..{sigma.n + 1}")
    w = list(sigma.word)
    w.insert(i - 1, sigma.n + 1)
    return Permutation(tuple(w))
