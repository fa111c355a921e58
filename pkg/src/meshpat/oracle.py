"""Brute-force distributions of mesh-pattern statistics over S_n and subclasses.

Permutations are generated in lexicographic order as numpy arrays, split into
chunks by a fixed prefix (or by block / extremal positions for the restricted
classes).  Each chunk yields an integer histogram; histograms are added, so the
result does not depend on how the chunks are grouped or scheduled.
"""
from __future__ import annotations

import itertools
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .perm_core import KMax, Pattern, Permutation, QuadSpec, mmp_count, statistics
from .poly import BiPoly, IntPoly

__all__ = [
    "PermClass", "ALL", "ONE_BEFORE_N", "gamma_block", "default_cap",
    "distribution", "distributions", "q_distribution", "kmax_distribution",
    "class_size", "iter_class", "distribution_naive", "q_distribution_naive",
]

DEFAULT_CAP_ALL = 10
DEFAULT_CAP_RESTRICTED = 11
# rows per chunk stay at or below 9! so a chunk is a few MB
_CHUNK_TAIL = 9


@dataclass(frozen=True)
class PermClass:
    """All of S_n, the permutations with 1 left of n, or those containing a fixed
    consecutive block.

    Block tokens are ``"n"``, ``"n-j"`` (relative to the top value) or plain
    integers (absolute bottom values); ``("n", "1")`` is the block n1.
    """

    kind: str
    block: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("all", "one-before-n", "block"):
            raise InvalidInputError(f"unknown class {self.kind!r}")
        if self.kind == "block" and not self.block:
            raise InvalidInputError("block class needs a descriptor")

    @classmethod
    def parse(cls, text: str) -> "PermClass":
        text = text.strip().lower()
        if text in ("all", ""):
            return ALL
        if text in ("one-before-n", "1->n", "onebeforen"):
            return ONE_BEFORE_N
        if text.startswith("block:"):
            return cls.of_block(text[len("block:"):])
        raise InvalidInputError(f"unknown class {text!r}")

    @classmethod
    def of_block(cls, desc) -> "PermClass":
        if isinstance(desc, str):
            if "," in desc or " " in desc:
                tokens = [t for t in re.split(r"[\s,]+", desc) if t]
            else:
                tokens = re.findall(r"n(?:-\d+)?|\d+", desc)
                if "".join(tokens) != desc:
                    raise InvalidInputError(f"cannot parse block {desc!r}")
        else:
            tokens = [str(t) for t in desc]
        for t in tokens:
            if not re.fullmatch(r"n(-\d+)?|\d+", t):
                raise InvalidInputError(f"bad block token {t!r}")
        return cls("block", tuple(tokens))

    def block_values(self, n: int) -> tuple[int, ...]:
        vals = []
        for t in self.block:
            v = n - int(t[2:]) if t.startswith("n-") else (n if t == "n" else int(t))
            vals.append(v)
        if len(set(vals)) != len(vals) or any(not 1 <= v <= n for v in vals):
            raise InvalidInputError(f"block {self} infeasible for n={n}")
        return tuple(vals)

    def __str__(self) -> str:
        if self.kind == "block":
            return "block:" + ",".join(self.block)
        return self.kind


ALL = PermClass("all")
ONE_BEFORE_N = PermClass("one-before-n")


def gamma_block(k: int, ell: int) -> PermClass:
    """n (n-1) ... (n-k+1) followed by ell (ell-1) ... 1."""
    if k < 1 or ell < 1:
        raise InvalidInputError("gamma block needs k, ell >= 1")
    top = ["n"] + [f"n-{j}" for j in range(1, k)]
    return PermClass("block", tuple(top + [str(v) for v in range(ell, 0, -1)]))


def default_cap(cls: PermClass = ALL) -> int:
    env = os.environ.get("MESHPAT_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP_ALL if cls.kind == "all" else DEFAULT_CAP_RESTRICTED


def class_size(n: int, cls: PermClass = ALL) -> int:
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    if cls.kind == "all":
        return math.factorial(n)
    if cls.kind == "one-before-n":
        if n < 2:
            raise InvalidInputError("one-before-n needs n >= 2")
        return math.factorial(n) // 2
    length = len(cls.block_values(n))
    return (n - length + 1) * math.factorial(n - length)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

@lru_cache(maxsize=12)
def _lex_perms(n: int) -> np.ndarray:
    """All permutations of 0..n-1, lexicographic, shape (n!, n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    sub = _lex_perms(n - 1)
    blocks = []
    for v in range(n):
        head = np.full((sub.shape[0], 1), v, dtype=np.int8)
        blocks.append(np.hstack([head, sub + (sub >= v)]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def _arrangements(values: Sequence[int]) -> np.ndarray:
    """All orderings of ``values`` (sorted input gives lexicographic rows)."""
    vals = np.asarray(sorted(values), dtype=np.int8)
    return vals[_lex_perms(len(vals))]


def _chunk_makers(n: int, cls: PermClass, min_chunks: int = 1) -> list[Callable[[], np.ndarray]]:
    if cls.kind == "all":
        p = max(0, n - _CHUNK_TAIL)
        while p < n and math.perm(n, p) < min_chunks:
            p += 1

        def make(prefix):
            def build():
                tail = _arrangements([v for v in range(1, n + 1) if v not in prefix])
                head = np.broadcast_to(np.asarray(prefix, dtype=np.int8),
                                       (tail.shape[0], len(prefix)))
                return np.hstack([head, tail])
            return build

        return [make(pre) for pre in itertools.permutations(range(1, n + 1), p)]

    if cls.kind == "one-before-n":
        if n < 2:
            raise InvalidInputError("one-before-n needs n >= 2")

        def make_pair(i, j):
            def build():
                tail = _arrangements(range(2, n))
                out = np.empty((tail.shape[0], n), dtype=np.int8)
                others = [c for c in range(n) if c not in (i, j)]
                out[:, others] = tail
                out[:, i] = 1
                out[:, j] = n
                return out
            return build

        return [make_pair(i, j) for i in range(n) for j in range(i + 1, n)]

    block = cls.block_values(n)
    length = len(block)

    def make_at(p):
        def build():
            tail = _arrangements([v for v in range(1, n + 1) if v not in block])
            b = np.broadcast_to(np.asarray(block, dtype=np.int8), (tail.shape[0], length))
            return np.hstack([tail[:, :p], b, tail[:, p:]])
        return build

    return [make_at(p) for p in range(n - length + 1)]


def iter_class(n: int, cls: PermClass = ALL) -> Iterable[Permutation]:
    """Yield the permutations of the class (small n; for tests and inspection)."""
    for make in _chunk_makers(n, cls):
        for row in make():
            yield Permutation(tuple(int(v) for v in row))


# --------------------------------------------------------------------------
# vectorized statistics
# --------------------------------------------------------------------------

def _quadrants(P: np.ndarray) -> tuple[np.ndarray, ...]:
    m, n = P.shape
    q1 = np.zeros((m, n), dtype=np.int16)
    q2 = np.zeros((m, n), dtype=np.int16)
    for i in range(n):
        v = P[:, i:i + 1]
        q2[:, i] = (P[:, :i] > v).sum(axis=1)
        q1[:, i] = (P[:, i + 1:] > v).sum(axis=1)
    pos = np.arange(n, dtype=np.int16)
    q3 = pos[None, :] - q2
    q4 = (n - 1 - pos)[None, :] - q1
    return q1, q2, q3, q4


def _mmp_vector(P: np.ndarray, quads, pattern: Pattern) -> np.ndarray:
    m, n = P.shape
    if isinstance(pattern, KMax):
        q2 = quads[1]
        total = np.zeros(m, dtype=np.int16)
        for i in range(n - 1):
            suffix = P[:, i + 1:]
            jpos = suffix.argmax(axis=1)
            upto = np.arange(suffix.shape[1])[None, :] <= jpos[:, None]
            cnt = ((suffix > P[:, i:i + 1]) & upto).sum(axis=1)
            total += ((q2[:, i] == 0) & (cnt >= pattern.k)).astype(np.int16)
        return total
    ok = np.ones(P.shape, dtype=bool)
    for bound, q in zip(pattern.bounds, quads):
        if bound.kind == "ge":
            if bound.m > 0:
                ok &= q >= bound.m
        else:
            ok &= q == bound.m
    return ok.sum(axis=1)


def _check_cap(n: int, cls: PermClass, cap: int | None) -> None:
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    limit = default_cap(cls) if cap is None else cap
    if n > limit:
        raise ResourceLimitError(n, limit)


def _run(n: int, cls: PermClass, work: Callable[[np.ndarray], object],
         partitions: int, workers: int) -> list:
    makers = _chunk_makers(n, cls, min_chunks=partitions)
    groups = [g for g in np.array_split(np.arange(len(makers)), max(1, partitions)) if len(g)]

    def run_group(idx):
        return [work(makers[k]()) for k in idx]

    if workers > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_group, groups))
    else:
        parts = [run_group(g) for g in groups]
    return [r for part in parts for r in part]


def distributions(n: int, patterns: Sequence[Pattern], cls: PermClass = ALL, *,
                  cap: int | None = None, partitions: int = 1,
                  workers: int = 1) -> list[IntPoly]:
    """Distribution polynomials of several patterns from a single enumeration."""
    _check_cap(n, cls, cap)
    patterns = list(patterns)

    def work(P):
        quads = _quadrants(P)
        return [np.bincount(_mmp_vector(P, quads, pat), minlength=n + 1) for pat in patterns]

    hists = _run(n, cls, work, partitions, workers)
    out = []
    for k in range(len(patterns)):
        total = [0] * (n + 1)
        for h in hists:
            for e, c in enumerate(h[k].tolist()):
                total[e] += c
        out.append(IntPoly(total))
    return out


def distribution(n: int, pattern: Pattern, cls: PermClass = ALL, **kw) -> IntPoly:
    """sum over the class of x^(number of positions matching ``pattern``)."""
    return distributions(n, [pattern], cls, **kw)[0]


def kmax_distribution(n: int, k: int, cls: PermClass = ALL, **kw) -> IntPoly:
    return distribution(n, KMax(k), cls, **kw)


def q_distribution(n: int, pattern: Pattern, cls: PermClass = ALL, *,
                   cap: int | None = None, partitions: int = 1,
                   workers: int = 1) -> BiPoly:
    """sum of x^mmp q^coinv over the class."""
    _check_cap(n, cls, cap)
    width = n * (n - 1) // 2 + 1

    def work(P):
        quads = _quadrants(P)
        mmp = _mmp_vector(P, quads, pattern).astype(np.int64)
        coinv = quads[0].sum(axis=1).astype(np.int64)
        return np.bincount(mmp * width + coinv, minlength=(n + 1) * width)

    total = np.zeros((n + 1) * width, dtype=object)
    for h in _run(n, cls, work, partitions, workers):
        total = total + h.astype(object)
    grid = total.reshape(n + 1, width)
    return BiPoly([[int(c) for c in row] for row in grid])


# --------------------------------------------------------------------------
# plain reference path (slow, independent of the numpy code above)
# --------------------------------------------------------------------------

def _naive_members(n: int, cls: PermClass) -> Iterable[tuple[int, ...]]:
    block = cls.block_values(n) if cls.kind == "block" else None
    for w in itertools.permutations(range(1, n + 1)):
        if cls.kind == "one-before-n" and w.index(1) > w.index(n):
            continue
        if block is not None:
            L = len(block)
            if not any(w[p:p + L] == block for p in range(n - L + 1)):
                continue
        yield w


def distribution_naive(n: int, pattern: Pattern, cls: PermClass = ALL) -> IntPoly:
    counts: dict[int, int] = {}
    for w in _naive_members(n, cls):
        e = mmp_count(Permutation(w), pattern)
        counts[e] = counts.get(e, 0) + 1
    return IntPoly([counts.get(e, 0) for e in range(n + 1)])


def q_distribution_naive(n: int, pattern: Pattern, cls: PermClass = ALL) -> BiPoly:
    terms: dict[tuple[int, int], int] = {}
    for w in _naive_members(n, cls):
        sigma = Permutation(w)
        key = (mmp_count(sigma, pattern), statistics(sigma).coinv)
        terms[key] = terms.get(key, 0) + 1
    return BiPoly.from_dict(terms)
