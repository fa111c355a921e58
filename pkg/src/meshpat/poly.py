"""Exact integer polynomials in x, in (x, q), and truncated exponential series.

An :class:`EgfSeries` of order N stores integer polynomials P_0..P_N and
stands for sum_n P_n t^n / n!.  Every operation used here (binomial
convolution, multiplying by 1/(1-t), integrating in t) keeps the P_n integral,
so no rational arithmetic is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import InvalidInputError

__all__ = [
    "IntPoly", "BiPoly", "EgfSeries", "X", "rising_product", "q_int",
    "q_factorial", "egf_mul", "egf_add", "egf_sub", "egf_scale",
    "egf_geom_mul", "egf_integrate", "egf_derivative", "egf_shift_embed",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Polynomial in x with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @staticmethod
    def _coerce(other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([u + (b[k] if k < len(b) else 0) for k, u in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-u for u in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([u * other for u in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            if u:
                for j, v in enumerate(other.coeffs):
                    out[i + j] += u * v
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPoly((1,))
        for _ in range(e):
            out = out * self
        return out

    def exact_div(self, d: int) -> "IntPoly":
        """Divide every coefficient by ``d``; raises if not divisible."""
        if any(u % d for u in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {d}")
        return IntPoly([u // d for u in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __call__(self, v: int) -> int:
        acc = 0
        for u in reversed(self.coeffs):
            acc = acc * v + u
        return acc

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, u in enumerate(self.coeffs):
            if u == 0:
                continue
            mag = abs(u)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(("-" if u < 0 else "") + body)
            else:
                parts.append(("- " if u < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


X = IntPoly((0, 1))


def rising_product(c0, step, s: int) -> IntPoly:
    """prod_{i=0}^{s-1} (c0 + i*step) for integer or IntPoly c0, step."""
    c0 = IntPoly._coerce(c0)
    step = IntPoly._coerce(step)
    out = IntPoly((1,))
    for i in range(s):
        out = out * (c0 + step * i)
    return out


class BiPoly:
    """Polynomial in (x, q); ``coeffs[i][j]`` multiplies x^i q^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Iterable[int]] = ()):
        rows = [list(_trim(r)) for r in coeffs]
        while rows and not rows[-1]:
            rows.pop()
        object.__setattr__(self, "coeffs", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int], int]) -> "BiPoly":
        if not terms:
            return cls()
        dx = max(i for i, _ in terms) + 1
        dq = max(j for _, j in terms) + 1
        rows = [[0] * dq for _ in range(dx)]
        for (i, j), c in terms.items():
            rows[i][j] += c
        return cls(rows)

    @classmethod
    def in_q(cls, p: IntPoly) -> "BiPoly":
        return cls([p.coeffs])

    @classmethod
    def in_x(cls, p: IntPoly) -> "BiPoly":
        return cls([[c] for c in p.coeffs])

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c}

    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int):
            return BiPoly([[other]])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = self.terms()
        for key, c in other.terms().items():
            t[key] = t.get(key, 0) + c
        return BiPoly.from_dict(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly([[c * other for c in row] for row in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), a in self.terms().items():
            for (i2, j2), b in other.terms().items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BiPoly.from_dict(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly([[other]])
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("BiPoly", self.coeffs))

    def __call__(self, x: int, q: int) -> int:
        return sum(c * x**i * q**j for (i, j), c in self.terms().items())

    def at_q(self, q: int) -> IntPoly:
        """Specialize q; result is a polynomial in x."""
        return IntPoly([sum(c * q**j for j, c in enumerate(row)) for row in self.coeffs])

    def at_x(self, x: int) -> IntPoly:
        """Specialize x; result is a polynomial in q."""
        width = max((len(r) for r in self.coeffs), default=0)
        out = [0] * width
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                out[j] += c * x**i
        return IntPoly(out)

    def coefficient(self, i: int, j: int) -> int:
        if i < len(self.coeffs) and j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return 0

    @property
    def degree_x(self) -> int:
        return len(self.coeffs) - 1

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.coeffs]

    def __str__(self) -> str:
        t = self.terms()
        if not t:
            return "0"
        parts = []
        for (i, j) in sorted(t):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("q" if j == 1 else f"q^{j}"),
                ) if s
            )
            c = t[(i, j)]
            parts.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({self.to_lists()})"


def q_int(m: int) -> IntPoly:
    """[m]_q = 1 + q + ... + q^(m-1) as a polynomial in q; [0]_q = 0."""
    return IntPoly([1] * m)


def q_factorial(m: int) -> IntPoly:
    out = IntPoly((1,))
    for i in range(1, m + 1):
        out = out * q_int(i)
    return out


# --------------------------------------------------------------------------
# truncated exponential generating functions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EgfSeries:
    """sum_{n<=order} terms[n] * t^n / n!, exact.

    ``clipped`` is set when an operation combined operands of different
    orders and had to truncate to the smaller one.
    """

    order: int
    terms: tuple[IntPoly, ...]
    clipped: bool = field(default=False, compare=False)

    def __post_init__(self):
        terms = tuple(IntPoly._coerce(p) for p in self.terms)
        if len(terms) != self.order + 1:
            raise InvalidInputError(
                f"order {self.order} needs {self.order + 1} terms, got {len(terms)}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, terms: Sequence) -> "EgfSeries":
        return cls(len(terms) - 1, tuple(terms))

    @classmethod
    def constant(cls, c, order: int) -> "EgfSeries":
        return cls(order, (IntPoly._coerce(c),) + (IntPoly(),) * order)

    @classmethod
    def exp(cls, order: int) -> "EgfSeries":
        """e^t: every P_n equals 1."""
        return cls(order, (IntPoly((1,)),) * (order + 1))

    @classmethod
    def product_form(cls, c0, step, order: int, prefactor=1) -> "EgfSeries":
        """Series with P_n = prefactor * prod_{i<n} (c0 + i*step).

        With step = x this is prefactor * (1 - t x)^(-c0/x); with step = 1 it
        is prefactor * (1 - t)^(-c0).
        """
        pre = IntPoly._coerce(prefactor)
        terms, acc = [], IntPoly((1,))
        c0, step = IntPoly._coerce(c0), IntPoly._coerce(step)
        for n in range(order + 1):
            terms.append(pre * acc)
            acc = acc * (c0 + step * n)
        return cls(order, tuple(terms))

    def __getitem__(self, n: int) -> IntPoly:
        return self.terms[n]

    def truncate(self, order: int) -> "EgfSeries":
        if order > self.order:
            raise InvalidInputError("cannot extend a truncated series")
        return EgfSeries(order, self.terms[: order + 1], self.clipped or order < self.order)

    def __len__(self):
        return len(self.terms)


def _common(a: EgfSeries, b: EgfSeries) -> tuple[int, bool]:
    return min(a.order, b.order), a.clipped or b.clipped or a.order != b.order


def egf_add(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    n, clipped = _common(a, b)
    return EgfSeries(n, tuple(a[k] + b[k] for k in range(n + 1)), clipped)


def egf_sub(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    n, clipped = _common(a, b)
    return EgfSeries(n, tuple(a[k] - b[k] for k in range(n + 1)), clipped)


def egf_scale(a: EgfSeries, c) -> EgfSeries:
    """Multiply every coefficient by a polynomial in x (not in t)."""
    c = IntPoly._coerce(c)
    return EgfSeries(a.order, tuple(p * c for p in a.terms), a.clipped)


def egf_mul(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    """Binomial convolution Q_n = sum_m C(n, m) A_m B_{n-m}."""
    n, clipped = _common(a, b)
    out = []
    for k in range(n + 1):
        acc = IntPoly()
        for m in range(k + 1):
            acc = acc + a[m] * b[k - m] * math.comb(k, m)
        out.append(acc)
    return EgfSeries(n, tuple(out), clipped)


def egf_geom_mul(a: EgfSeries) -> EgfSeries:
    """Multiply by 1/(1-t): Q_n = sum_{m<=n} n!/m! A_m."""
    out = []
    acc = IntPoly()
    for k in range(a.order + 1):
        # Q_k = k * Q_{k-1} + A_k
        acc = acc * k + a[k]
        out.append(acc)
    return EgfSeries(a.order, tuple(out), a.clipped)


def egf_integrate(a: EgfSeries, constant=0) -> EgfSeries:
    """constant + integral_0^t: Q_0 = constant, Q_{n+1} = A_n."""
    return EgfSeries(a.order + 1, (IntPoly._coerce(constant),) + a.terms, a.clipped)


def egf_derivative(a: EgfSeries) -> EgfSeries:
    """d/dt: Q_n = A_{n+1}."""
    if a.order < 1:
        raise InvalidInputError("derivative needs order >= 1")
    return EgfSeries(a.order - 1, a.terms[1:], a.clipped)


def egf_shift_embed(a: EgfSeries, k: int, prefix: Sequence = ()) -> EgfSeries:
    """Turn sum_n R_n t^(n-k)/(n-k)! into sum_n R_n t^n/n!.

    ``a.terms[m]`` holds R_{m+k}; ``prefix`` supplies R_0..R_{k-1}.
    """
    if len(prefix) != k:
        raise InvalidInputError(f"shift by {k} needs {k} prefix terms, got {len(prefix)}")
    terms = tuple(IntPoly._coerce(p) for p in prefix) + a.terms
    return EgfSeries(a.order + k, terms, a.clipped)
