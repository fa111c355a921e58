"""Multivariate indicator recursions built by inserting a new maximum.

A permutation sigma in S_n contributes the monomial prod_i v_i where v_i is
the variable of whichever family's pattern matches at position i (families of
one engine are mutually exclusive). A monomial is stored as one bitmask per
family, bit p standing for position p, and a MultiPoly is a dict from those
mask tuples to integer coefficients.

Putting n+1 at slot i gives quadrant I one more point for every old position
j < i and quadrant II one more point for every j >= i. Each engine encodes how
that relabels its families (``before`` and ``after`` below) and which family
the new maximum itself belongs to.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import InvalidInputError
from .perm_core import QuadSpec, quadrant_counts
from .poly import IntPoly

__all__ = [
    "MultiPoly", "Engine", "ENGINES", "engine", "run_engine", "direct",
    "specialize", "f1010_step", "f1010", "f10a0", "g2020", "f1011", "h1111",
]

Key = tuple[int, ...]


@dataclass(frozen=True)
class MultiPoly:
    """Polynomial in per-position family variables.

    ``lo..hi`` is the active position range; a monomial key holds one mask per
    name in ``families``.
    """

    families: tuple[str, ...]
    n: int
    lo: int
    hi: int
    terms: Mapping[Key, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.terms.items():
            if len(key) != len(self.families):
                raise InvalidInputError("monomial key does not match family count")
            if c:
                clean[tuple(key)] = int(c)
        object.__setattr__(self, "terms", clean)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.families, self.n, self.terms) == (other.families, other.n, other.terms)

    def __hash__(self):
        return hash((self.families, self.n, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def mass(self) -> int:
        return sum(self.terms.values())

    def specialize(self, assignment: Mapping[str, str] | None = None) -> IntPoly:
        return specialize(self, assignment)

    def state_bound(self) -> int:
        width = max(0, self.hi - self.lo + 1)
        return (len(self.families) + 1) ** width

    def well_formed(self) -> bool:
        """Masks pairwise disjoint, inside lo..hi, and support within the state bound."""
        window = ((1 << (self.hi + 1)) - 1) ^ ((1 << self.lo) - 1) if self.hi >= self.lo else 0
        for key in self.terms:
            seen = 0
            for m in key:
                if m & seen or m & ~window:
                    return False
                seen |= m
        return len(self.terms) <= self.state_bound()

    def monomial_str(self, key: Key) -> str:
        parts = []
        for name, m in zip(self.families, key):
            parts += [f"{name}_{p}" for p in range(m.bit_length()) if m >> p & 1]
        return "*".join(sorted(parts, key=lambda s: int(s.split("_")[1]))) or "1"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for key in sorted(self.terms, key=lambda k: (sum(bin(m).count("1") for m in k), k)):
            c, mono = self.terms[key], self.monomial_str(key)
            out.append(str(c) if mono == "1" else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(out)


def specialize(M: MultiPoly, assignment: Mapping[str, str] | None = None) -> IntPoly:
    """Send each family to ``"x"`` or ``"1"``; by default the first family is x."""
    if assignment is None:
        assignment = {f: ("x" if j == 0 else "1") for j, f in enumerate(M.families)}
    unknown = set(assignment) - set(M.families)
    if unknown:
        raise InvalidInputError(f"unknown families {sorted(unknown)}")
    use = []
    for j, f in enumerate(M.families):
        v = str(assignment.get(f, "1"))
        if v not in ("x", "1"):
            raise InvalidInputError(f"family {f} must map to x or 1, got {v!r}")
        if v == "x":
            use.append(j)
    coeffs: dict[int, int] = defaultdict(int)
    for key, c in M.terms.items():
        coeffs[sum(key[j].bit_count() for j in use)] += c
    top = max(coeffs, default=-1)
    return IntPoly([coeffs.get(e, 0) for e in range(top + 1)])


@dataclass(frozen=True)
class Engine:
    """Relabeling rules for one recursion.

    ``before[f]`` / ``after[f]`` give the family an old tag f turns into when
    it sits left / right of the new maximum; ``new_tag`` is the family of the
    new maximum at slot i whenever ``new_slot(i, n)`` holds (n = old length).
    ``specs`` are the quadrant patterns defining each family.
    """

    name: str
    families: tuple[str, ...]
    specs: tuple[QuadSpec, ...]
    before: tuple[int, ...]
    after: tuple[int, ...]
    new_tag: int
    new_slot: Callable[[int, int], bool]
    active: Callable[[int], tuple[int, int]]

    def empty(self, n: int) -> MultiPoly:
        lo, hi = self.active(n)
        return MultiPoly(self.families, n, lo, hi, {})

    def base(self) -> MultiPoly:
        lo, hi = self.active(1)
        return MultiPoly(self.families, 1, lo, hi, {(0,) * len(self.families): 1})


def _relabel(masks: Key, rule: Sequence[int], nfam: int) -> list[int]:
    out = [0] * nfam
    for f, m in enumerate(masks):
        if m:
            out[rule[f]] |= m
    return out


def step(eng: Engine, M: MultiPoly) -> MultiPoly:
    """One insertion step F_n -> F_{n+1}."""
    n, nfam = M.n, len(eng.families)
    acc: dict[Key, int] = defaultdict(int)
    for key, c in M.terms.items():
        for i in range(1, n + 2):
            lowmask = (1 << i) - 1
            low = _relabel(tuple(m & lowmask for m in key), eng.before, nfam)
            high = _relabel(tuple((m >> i) << (i + 1) for m in key), eng.after, nfam)
            new = [a | b for a, b in zip(low, high)]
            if eng.new_slot(i, n):
                new[eng.new_tag] |= 1 << i
            acc[tuple(new)] += c
    lo, hi = eng.active(n + 1)
    return MultiPoly(eng.families, n + 1, lo, hi, acc)


def run_engine(eng: Engine, N: int) -> list[MultiPoly]:
    """[M_1, ..., M_N]."""
    if N < 1:
        raise InvalidInputError("N must be at least 1")
    out = [eng.base()]
    while len(out) < N:
        out.append(step(eng, out[-1]))
    return out


def direct(eng: Engine, n: int) -> MultiPoly:
    """Build M_n straight from S_n by reading off each position's family."""
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    acc: dict[Key, int] = defaultdict(int)
    for w in itertools.permutations(range(1, n + 1)):
        masks = [0] * len(eng.families)
        for p in range(1, n + 1):
            counts = quadrant_counts(w, p)
            hits = [f for f, s in enumerate(eng.specs) if s.accepts(counts)]
            if len(hits) > 1:
                raise AssertionError(f"families overlap at {w}, position {p}")
            if hits:
                masks[hits[0]] |= 1 << p
        acc[tuple(masks)] += 1
    lo, hi = eng.active(n)
    return MultiPoly(eng.families, n, lo, hi, acc)


def _f10a0_engine(a: int) -> Engine:
    if a < 1:
        raise InvalidInputError("a must be at least 1")
    return Engine(
        name="f1010" if a == 1 else f"f10{a}0",
        families=("x", "y"),
        specs=(QuadSpec.of(1, 0, a, 0), QuadSpec.of("empty", 0, a, 0)),
        before=(0, 0), after=(0, 1), new_tag=1,
        new_slot=lambda i, n: i >= a + 1,
        active=lambda n: (a + 1, n),
    )


G2020 = Engine(
    name="g2020",
    families=("x", "y", "z"),
    specs=(QuadSpec.of(2, 0, 2, 0), QuadSpec.of("eq:1", 0, 2, 0), QuadSpec.of("empty", 0, 2, 0)),
    before=(0, 0, 1), after=(0, 1, 2), new_tag=2,
    new_slot=lambda i, n: i >= 3,
    active=lambda n: (3, n),
)

F1011 = Engine(
    name="f1011",
    families=("x", "y"),
    specs=(QuadSpec.of(1, 0, 1, 1), QuadSpec.of("empty", 0, 1, 1)),
    before=(0, 0), after=(0, 1), new_tag=1,
    new_slot=lambda i, n: 2 <= i <= n,
    active=lambda n: (2, n - 1),
)

# x = (1,1,1,1), y = (empty,1,1,1), z = (1,empty,1,1), w = (empty,empty,1,1)
H1111 = Engine(
    name="h1111",
    families=("x", "y", "z", "w"),
    specs=(
        QuadSpec.of(1, 1, 1, 1), QuadSpec.of("empty", 1, 1, 1),
        QuadSpec.of(1, "empty", 1, 1), QuadSpec.of("empty", "empty", 1, 1),
    ),
    before=(0, 0, 2, 2), after=(0, 1, 0, 1), new_tag=3,
    new_slot=lambda i, n: 2 <= i <= n,
    active=lambda n: (2, n - 1),
)

F1010 = _f10a0_engine(1)

ENGINES: dict[str, Engine] = {"f1010": F1010, "g2020": G2020, "f1011": F1011, "h1111": H1111}


def engine(name: str) -> Engine:
    """Look up an engine by name; ``f10a0:<a>`` (or ``f10<a>0``) builds the a-variant."""
    if name in ENGINES:
        return ENGINES[name]
    if name.startswith("f10a0:"):
        return _f10a0_engine(int(name.split(":", 1)[1]))
    if len(name) == 5 and name.startswith("f10") and name.endswith("0") and name[3].isdigit():
        return _f10a0_engine(int(name[3]))
    raise InvalidInputError(f"unknown engine {name!r}")


def f1010_step(F: MultiPoly) -> MultiPoly:
    return step(F1010, F)


def f1010(N: int) -> list[MultiPoly]:
    return run_engine(F1010, N)


def f10a0(a: int, N: int) -> list[MultiPoly]:
    return run_engine(_f10a0_engine(a), N)


def g2020(N: int) -> list[MultiPoly]:
    return run_engine(G2020, N)


def f1011(N: int) -> list[MultiPoly]:
    return run_engine(F1011, N)


def h1111(N: int) -> list[MultiPoly]:
    return run_engine(H1111, N)


def mass_ok(M: MultiPoly) -> bool:
    return M.mass() == math.factorial(M.n)
